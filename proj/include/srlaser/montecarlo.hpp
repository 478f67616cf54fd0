// Copyright 2026 The srlaser Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "srlaser/params.hpp"

namespace srl::mc {

/// Every realization draws from std::mt19937_64 seeded with seed ^ index.
/// Signs use the top bit of one 64-bit output, so streams are identical on
/// every conforming platform.
using Rng = std::mt19937_64;

struct SpinVector {
  double x = 0.0, y = 0.0, z = 0.0;
  double norm() const;
  double perp_sq() const { return x * x + y * y; }
};

struct McConfig {
  PhysParams params;  ///< gamma must be 0
  std::uint64_t seed = 0;
  std::uint64_t events = 0;  ///< loading events per realization, >= 10 N
  /// Discarded initial duration in seconds; defaults to 5/Gamma_R.
  std::optional<double> burn_in;
  std::size_t realizations = 1;
  /// RK4 substeps per inter-event interval; 0 picks enough to keep
  /// (4 g^2/kappa)(N/2) dt <= 0.1.
  int substeps = 0;
  /// When false no atoms are exchanged: the spin follows the pulsed equations
  /// only. For testing.
  bool atom_exchange = true;
  bool record_events = false;

  double interval() const { return 1.0 / params.Gamma; }
  double burn_in_time() const;
  std::uint64_t burn_in_events() const;
  int substeps_per_event() const;
};

void check(const McConfig& cfg);

enum class EventKind : std::uint8_t { kLoad, kUnload };

struct EventRecord {
  std::uint64_t index = 0;
  EventKind kind = EventKind::kLoad;
  double t = 0.0;
  double a = 0.0;  ///< x (load) or first orthogonal (unload) increment
  double b = 0.0;  ///< y (load) or second orthogonal (unload) increment
  bool noise_skipped = false;
};

struct McTrajectory {
  double sample_dt = 0.0;
  std::vector<double> t;  ///< sample times, just before each load
  std::vector<double> Sx, Sy, Sz;
  std::vector<EventRecord> events;  ///< only with record_events
  /// Samples where a component exceeded N in magnitude.
  std::size_t excursions = 0;

  std::size_t size() const { return t.size(); }
};

/// S_z += 1/2; S_x, S_y += +-1/2 with independent fair signs.
void load_atom(SpinVector& s, Rng& rng, EventRecord* log = nullptr);

/// Two unit vectors orthogonal to `u` and to each other, built by
/// Gram-Schmidt against the coordinate axis least aligned with `u`.
std::pair<SpinVector, SpinVector> orthogonal_basis(const SpinVector& u);

/// Scales S by (N-1)/N, then adds +-1/2 along each direction orthogonal to the
/// spin. A zero-length spin only scales. Returns false if noise was skipped.
bool unload_atom(SpinVector& s, double N, Rng& rng, EventRecord* log = nullptr);

/// Initial state: fully inverted, S_z = N/2, with S_x, S_y each the sum of N
/// independent +-1/2 draws.
SpinVector initial_state(double N, Rng& rng);

/// Classical RK4 of the pulsed mean-field equations for (Sx, Sy, Sz).
void evolve_pulsed(SpinVector& s, double a, double h, int substeps);

/// One realization. `index` selects the RNG stream seed ^ index.
McTrajectory run_trajectory(const McConfig& cfg, std::size_t index = 0);

struct Autocorrelation {
  double sample_dt = 0.0;
  std::vector<std::size_t> lags;
  std::vector<double> dt;  ///< lag in seconds
  std::vector<double> C;
  std::size_t samples = 0;
};

inline constexpr std::size_t kMinSamplesPerLag = 100;

/// C(k) = (1/(n-k)) sum_i x_i x_{i+k}. Lags must not exceed n/4 and every
/// lag must leave at least 100 products.
Autocorrelation autocorrelation(std::span<const double> x, double sample_dt,
                                std::span<const std::size_t> lags);

/// Chooses lags up to n/4 that resolve the decay to 5 % of C(0).
Autocorrelation autocorrelation_auto(std::span<const double> x,
                                     double sample_dt);

struct AutocorrFit {
  double amplitude = 0.0;
  double tau_c = 0.0;
  double tau_err = 0.0;  ///< standard error of tau_c
  double domega = 0.0;   ///< 1/tau_c
  double domega_err = 0.0;
  double rms_residual = 0.0;
  std::size_t points = 0;
  /// tau_c exceeds the retained duration: domega is an upper bound only.
  bool lower_bound = false;
};

/// Least-squares fit of A exp(-dt/tau_c) over the leading lags where
/// C > 0.05 C(0). `retained` is the duration of the analysed window.
AutocorrFit fit_linewidth(const Autocorrelation& corr, double retained);

struct RealizationResult {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  AutocorrFit fit;
  double mean_Sz = 0.0;
  double mean_perp_sq = 0.0;
  double domega_first_half = 0.0;
  double domega_second_half = 0.0;
  std::size_t excursions = 0;
};

/// Burn-in removal, autocorrelation and fit for one trajectory.
RealizationResult analyse(const McConfig& cfg, const McTrajectory& traj,
                          std::size_t index);

struct Aggregate {
  double mean = 0.0;
  double std = 0.0;  ///< sample standard deviation, 0 for one sample
  std::size_t n = 0;
  bool single_sample = false;
  double sem() const;
};

Aggregate aggregate(std::span<const double> values);

struct EnsembleResult {
  std::vector<RealizationResult> realizations;
  Aggregate domega;
  Aggregate mean_Sz;
  Aggregate mean_perp_sq;
  Aggregate domega_first_half;
  Aggregate domega_second_half;
};

/// Runs all realizations on `threads` workers (0 = all). Results are stored by
/// realization index, so the output does not depend on the worker count.
EnsembleResult run_ensemble(const McConfig& cfg, unsigned threads = 0);

}  // namespace srl::mc
