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
#include <string>
#include <string_view>
#include <vector>

#include "srlaser/params.hpp"

namespace srl::sweep {

enum class Scale { kLinear, kLog };

/// One swept parameter. Names follow the config keys: g_hz, kappa_hz,
/// gamma_hz, Gamma_hz, gammaR_hz, N.
struct Axis {
  std::string name;
  Scale scale = Scale::kLinear;
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;

  std::vector<double> values() const;
};

enum class Task { kMfSteady, kCumulantSteady, kMcLinewidth, kSpectrumLinewidth };

std::string_view to_string(Task t);
Task parse_task(std::string_view name);
Scale parse_scale(std::string_view name);

/// Settings of the long mean-field run behind a spectrum linewidth.
struct SpectrumRunOptions {
  double relax_periods = 40.0;  ///< duration is at least this many 1/Gamma_R
  double min_duration = 4.0;    ///< seconds
  std::size_t samples = 65536;
  double seed_fraction = 0.03;  ///< initial |Sm| / N, with Sz = N/2
};

struct McSweepOptions {
  std::uint64_t seed = 1;
  /// Analysed duration in units of kappa/(2 g^2), the smallest expected
  /// correlation time.
  double correlation_times = 400.0;
  std::size_t realizations = 10;
};

/// Loading events covering the default burn-in plus `correlation_times`
/// units of kappa/(2 g^2), and never fewer than 10 N.
std::uint64_t mc_events(const PhysParams& p, double correlation_times);

struct SweepSpec {
  std::vector<Axis> axes;
  PhysParams fixed;
  Task task = Task::kSpectrumLinewidth;
  SpectrumRunOptions spectrum;
  McSweepOptions mc;
};

/// At least one and at most two axes, each with count >= 2 and a valid range.
void check(const SweepSpec& spec);

/// Sets one named parameter, given in the units of its config key.
void apply(PhysParams& p, std::string_view name, double value);

struct Point {
  std::vector<double> coords;  ///< one value per axis, in axis units
  PhysParams params;
  double domega = 0.0;  ///< HWHM in rad/s, NaN on failure
  bool superradiant = false;
  std::string error;  ///< empty on success
};

struct SweepResult {
  std::vector<Point> points;  ///< first axis varies fastest
};

/// HWHM of the emitted spectrum from a long mean-field run with spontaneous
/// emission, started fully inverted with a small seed dipole.
double spectrum_linewidth(const PhysParams& p, const SpectrumRunOptions& opt);

/// Evaluates every grid point on `threads` workers. Failures are stored in
/// the point; the sweep always completes.
SweepResult run_sweep(const SweepSpec& spec, unsigned threads = 0);

struct BoundaryPoint {
  double Gamma_hz = 0.0;
  double gamma_crit_hz = 0.0;
};

struct PhaseDiagram {
  SweepResult grid;
  std::vector<BoundaryPoint> boundary;
  /// Set when no column of the grid is above the collective threshold.
  std::string warning;
};

/// Requires axes gamma_hz and Gamma_hz, in either order.
PhaseDiagram run_phase_diagram(const SweepSpec& spec, unsigned threads = 0);

}  // namespace srl::sweep
