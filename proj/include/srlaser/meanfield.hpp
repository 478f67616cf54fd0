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

#include <optional>
#include <string_view>
#include <vector>

#include "srlaser/ode.hpp"
#include "srlaser/params.hpp"

namespace srl::mf {

enum class Variant { kPulsed, kContinuous, kContinuousSpont, kNonadiabatic };

std::string_view to_string(Variant v);
/// Accepts "pulsed", "continuous", "continuous_spont", "nonadiabatic".
Variant parse_variant(std::string_view name);

/// Collective spin expectation values. <S+> is conj(Sm) and never stored.
/// `b` is only dynamical in the non-adiabatic variant.
struct MeanFieldState {
  double Sz = 0.0;
  Complex Sm{0.0, 0.0};
  Complex b{0.0, 0.0};

  Complex Sp() const { return std::conj(Sm); }
  /// |<Sx>|^2 + |<Sy>|^2 + <Sz>^2 = |Sm|^2 + Sz^2.
  double bloch_norm_sq() const { return std::norm(Sm) + Sz * Sz; }
};

// Each RHS returns the time derivative packed in a MeanFieldState.
MeanFieldState rhs_pulsed(const MeanFieldState& s, const PhysParams& p);
MeanFieldState rhs_continuous(const MeanFieldState& s, const PhysParams& p);
MeanFieldState rhs_continuous_spont(const MeanFieldState& s,
                                    const PhysParams& p);
/// Keeps the cavity field. Loading and spontaneous emission act on the atomic
/// variables only.
MeanFieldState rhs_nonadiabatic(const MeanFieldState& s, const PhysParams& p);
MeanFieldState rhs(Variant v, const MeanFieldState& s, const PhysParams& p);

/// Adiabatic cavity field -2i (g/kappa) Sm.
Complex adiabatic_field(Complex Sm, const PhysParams& p);

/// State vector layout: [Sz, Sm] or [Sz, Sm, b] for the non-adiabatic variant.
/// Sz is carried as a complex number with zero imaginary part.
std::size_t dimension(Variant v);
ode::StateVector pack(Variant v, const MeanFieldState& s);
MeanFieldState unpack(Variant v, std::span<const Complex> y);
ode::OdeSystem make_system(Variant v, const PhysParams& p);

/// Default integration policy. The adiabatic variants have no cavity scale,
/// so their step bound uses only the atomic rates.
ode::IntegrationPolicy default_policy(Variant v, const PhysParams& p);

struct ScenarioSpec {
  Variant variant = Variant::kPulsed;
  double Sz0 = 0.0;
  Complex Sm0{0.0, 0.0};
  /// Initial cavity field for the non-adiabatic variant; adiabatic value if
  /// unset.
  std::optional<Complex> b0;
  double duration = 0.0;
  /// Uniform output grid when positive; otherwise every record_stride steps.
  double sample_interval = 0.0;
  std::size_t record_stride = 1;

  /// Fully inverted start with a small real seed dipole of 1e-3 N.
  static ScenarioSpec pulsed_default(const PhysParams& p, double duration);
};

void check(const ScenarioSpec& spec, const PhysParams& p);

struct MfTrajectory {
  std::vector<double> t;
  std::vector<double> Sz;
  std::vector<Complex> Sm;
  /// Integrated field (non-adiabatic) or the adiabatic reconstruction.
  std::vector<Complex> b;

  std::size_t size() const { return t.size(); }
  MeanFieldState at(std::size_t i) const { return {Sz[i], Sm[i], b[i]}; }
};

/// Runs one scenario. The sampling fields of the spec replace those of
/// `policy`.
MfTrajectory run_scenario(const ScenarioSpec& spec, const PhysParams& p,
                          const ode::IntegrationPolicy& policy);
MfTrajectory run_scenario(const ScenarioSpec& spec, const PhysParams& p);

/// Largest |Sz| - N/2 and |Sm| - N/2 excursion along a trajectory.
double max_bound_excess(const MfTrajectory& traj, double N);

/// Full width at half maximum of |Sm(t)|^2 around its global peak, by linear
/// interpolation. Throws NumericError if the peak touches either end.
double burst_fwhm(const MfTrajectory& traj);

}  // namespace srl::mf
