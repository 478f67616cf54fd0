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

#include "srlaser/params.hpp"

#include <cmath>

#include "srlaser/analytics.hpp"

namespace srl {

PhysParams PhysParams::from_hz(double g_hz, double kappa_hz, double gamma_hz,
                               double Gamma_hz, double N) {
  PhysParams p;
  p.g = hz_to_angular(g_hz);
  p.kappa = hz_to_angular(kappa_hz);
  p.gamma = hz_to_angular(gamma_hz);
  p.Gamma = hz_to_angular(Gamma_hz);
  p.N = N;
  return p;
}

std::optional<double> PhysParams::cooperativity() const {
  if (gamma > 0.0) return g * g / (kappa * gamma);
  return std::nullopt;
}

std::optional<double> PhysParams::loading_cooperativity() const {
  if (Gamma > 0.0) return g * g / (kappa * Gamma);
  return std::nullopt;
}

double PhysParams::collective_loading_parameter() const {
  if (Gamma <= 0.0) return std::numeric_limits<double>::infinity();
  return collective_rate() / gamma_r();
}

namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw ValidationError(field, what);
}

}  // namespace

void check(const PhysParams& p) {
  require(std::isfinite(p.g), "g", "must be finite");
  require(std::isfinite(p.kappa), "kappa", "must be finite");
  require(std::isfinite(p.gamma), "gamma", "must be finite");
  require(std::isfinite(p.Gamma), "Gamma", "must be finite");
  require(std::isfinite(p.N), "N", "must be finite");
  require(p.g > 0.0, "g", "must be positive");
  require(p.kappa > 0.0, "kappa", "must be positive");
  require(p.gamma >= 0.0, "gamma", "must be non-negative");
  require(p.Gamma >= 0.0, "Gamma", "must be non-negative");
  require(p.N >= 1.0, "N", "must be at least 1");
}

RegimeReport validate(const PhysParams& p) {
  check(p);
  RegimeReport r;
  r.gamma_r = p.gamma_r();
  r.C = p.cooperativity();
  r.C_prime = p.loading_cooperativity();
  r.r = p.r();
  r.adiabatic_margin = p.kappa / p.collective_rate();
  r.adiabatic_ok = r.adiabatic_margin >= kRegimeMarginFactor;
  r.ergodic_margin = p.Gamma > 0.0
                         ? p.collective_rate() / r.gamma_r
                         : std::numeric_limits<double>::infinity();
  r.ergodic_ok = r.ergodic_margin >= kRegimeMarginFactor;
  r.superradiant = mf_steady_state(p).superradiant;
  return r;
}

PhysParams from_experiment(double velocity, double waist, double g,
                           double kappa, double gamma, double N) {
  require(std::isfinite(velocity) && velocity > 0.0, "v", "must be positive");
  require(std::isfinite(waist) && waist > 0.0, "w0", "must be positive");
  PhysParams p;
  p.g = g;
  p.kappa = kappa;
  p.gamma = gamma;
  p.N = N;
  p.Gamma = N * (velocity / waist);
  check(p);
  return p;
}

}  // namespace srl
