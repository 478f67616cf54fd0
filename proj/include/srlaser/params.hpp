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

#include <limits>
#include <optional>

#include "srlaser/common.hpp"

namespace srl {

/// Physical parameters of the beam laser. Every rate is an angular rate in
/// rad/s; conversion from the Hz values used at the interfaces happens once,
/// in `from_hz` and the config reader.
struct PhysParams {
  double g = 0.0;      ///< single-atom coupling to the cavity mode
  double kappa = 0.0;  ///< cavity field leakage
  double gamma = 0.0;  ///< spontaneous emission out of the mode
  double Gamma = 0.0;  ///< atom loading rate
  double N = 1.0;      ///< steady-state number of atoms in the mode

  static PhysParams from_hz(double g_hz, double kappa_hz, double gamma_hz,
                            double Gamma_hz, double N);

  /// Refreshing rate Gamma/N, the inverse transit time.
  double gamma_r() const { return Gamma / N; }
  /// Single-atom Purcell rate g^2/kappa.
  double purcell() const { return g * g / kappa; }
  /// Collective emission rate N g^2/kappa.
  double collective_rate() const { return N * purcell(); }
  double r() const { return gamma_r() / kappa; }

  /// kappa*gamma/g^2; zero when gamma is zero.
  double inverse_cooperativity() const { return kappa * gamma / (g * g); }
  /// kappa*Gamma/g^2; zero when Gamma is zero.
  double inverse_loading_cooperativity() const {
    return kappa * Gamma / (g * g);
  }
  std::optional<double> cooperativity() const;          ///< C, if gamma > 0
  std::optional<double> loading_cooperativity() const;  ///< C', if Gamma > 0

  /// N^2 C' = N g^2 / (kappa Gamma_R); +inf for Gamma = 0.
  double collective_loading_parameter() const;
};

/// Throws ValidationError naming the first field that is non-finite or out of
/// range.
void check(const PhysParams& p);

struct RegimeReport {
  double gamma_r = 0.0;
  std::optional<double> C;
  std::optional<double> C_prime;
  double r = 0.0;
  /// kappa / (N g^2/kappa); the cavity must be fast against collective decay.
  double adiabatic_margin = 0.0;
  bool adiabatic_ok = false;
  /// (N g^2/kappa) / Gamma_R; +inf when Gamma = 0.
  double ergodic_margin = 0.0;
  bool ergodic_ok = false;
  bool superradiant = false;
};

inline constexpr double kRegimeMarginFactor = 10.0;

RegimeReport validate(const PhysParams& p);

/// Loading rate from beam kinematics: Gamma_R = v / w0 (taken directly as an
/// angular rate) and Gamma = N Gamma_R. Other rates are passed through.
PhysParams from_experiment(double velocity, double waist, double g,
                           double kappa, double gamma, double N);

}  // namespace srl
