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

#include "srlaser/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace srl::mf {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::kPulsed: return "pulsed";
    case Variant::kContinuous: return "continuous";
    case Variant::kContinuousSpont: return "continuous_spont";
    case Variant::kNonadiabatic: return "nonadiabatic";
  }
  return "?";
}

Variant parse_variant(std::string_view name) {
  for (auto v : {Variant::kPulsed, Variant::kContinuous,
                 Variant::kContinuousSpont, Variant::kNonadiabatic}) {
    if (to_string(v) == name) return v;
  }
  throw ValidationError("variant", "unknown variant '" + std::string(name) + "'");
}

MeanFieldState rhs_pulsed(const MeanFieldState& s, const PhysParams& p) {
  const double a = 4.0 * p.purcell();
  MeanFieldState d;
  d.Sz = -a * std::norm(s.Sm);
  d.Sm = a * s.Sz * s.Sm;
  return d;
}

MeanFieldState rhs_continuous(const MeanFieldState& s, const PhysParams& p) {
  MeanFieldState d = rhs_pulsed(s, p);
  d.Sz += 0.5 * p.Gamma - p.Gamma * s.Sz / p.N;
  d.Sm -= p.gamma_r() * s.Sm;
  return d;
}

MeanFieldState rhs_continuous_spont(const MeanFieldState& s,
                                    const PhysParams& p) {
  MeanFieldState d = rhs_continuous(s, p);
  d.Sz -= p.gamma * (s.Sz + 0.5 * p.N);
  d.Sm -= 0.5 * p.gamma * s.Sm;
  return d;
}

MeanFieldState rhs_nonadiabatic(const MeanFieldState& s, const PhysParams& p) {
  const double g = p.g;
  const double gr = p.gamma_r();
  MeanFieldState d;
  d.b = -0.5 * p.kappa * s.b - kI * g * s.Sm;
  d.Sm = 2.0 * kI * g * s.Sz * s.b - (gr + 0.5 * p.gamma) * s.Sm;
  const Complex exch = kI * g * (s.Sm * std::conj(s.b) - std::conj(s.Sm) * s.b);
  d.Sz = exch.real() + 0.5 * p.Gamma - gr * s.Sz -
         p.gamma * (s.Sz + 0.5 * p.N);
  return d;
}

MeanFieldState rhs(Variant v, const MeanFieldState& s, const PhysParams& p) {
  switch (v) {
    case Variant::kPulsed: return rhs_pulsed(s, p);
    case Variant::kContinuous: return rhs_continuous(s, p);
    case Variant::kContinuousSpont: return rhs_continuous_spont(s, p);
    case Variant::kNonadiabatic: return rhs_nonadiabatic(s, p);
  }
  return {};
}

Complex adiabatic_field(Complex Sm, const PhysParams& p) {
  return -2.0 * kI * (p.g / p.kappa) * Sm;
}

std::size_t dimension(Variant v) {
  return v == Variant::kNonadiabatic ? 3 : 2;
}

ode::StateVector pack(Variant v, const MeanFieldState& s) {
  ode::StateVector y{Complex(s.Sz, 0.0), s.Sm};
  if (v == Variant::kNonadiabatic) y.push_back(s.b);
  return y;
}

MeanFieldState unpack(Variant v, std::span<const Complex> y) {
  MeanFieldState s;
  s.Sz = y[0].real();
  s.Sm = y[1];
  if (v == Variant::kNonadiabatic) s.b = y[2];
  return s;
}

ode::OdeSystem make_system(Variant v, const PhysParams& p) {
  ode::OdeSystem sys;
  sys.dimension = dimension(v);
  sys.rhs = [v, p](double, std::span<const Complex> y, std::span<Complex> dy) {
    const MeanFieldState d = rhs(v, unpack(v, y), p);
    dy[0] = Complex(d.Sz, 0.0);
    dy[1] = d.Sm;
    if (v == Variant::kNonadiabatic) dy[2] = d.b;
  };
  return sys;
}

ode::IntegrationPolicy default_policy(Variant v, const PhysParams& p) {
  if (v == Variant::kNonadiabatic) return ode::IntegrationPolicy::defaults_for(p);
  const double fastest =
      std::max({2.0 * p.collective_rate(), p.gamma_r(), p.gamma});
  return ode::IntegrationPolicy::adaptive(1e-8, 1e-12, 1e-300, 0.05 / fastest);
}

ScenarioSpec ScenarioSpec::pulsed_default(const PhysParams& p,
                                          double duration) {
  ScenarioSpec s;
  s.variant = Variant::kPulsed;
  s.Sz0 = 0.5 * p.N;
  s.Sm0 = Complex(1e-3 * p.N, 0.0);
  s.duration = duration;
  return s;
}

void check(const ScenarioSpec& spec, const PhysParams& p) {
  check(p);
  if (!(spec.duration > 0.0) || !std::isfinite(spec.duration))
    throw ValidationError("duration", "must be positive");
  if (!std::isfinite(spec.Sz0) || !std::isfinite(spec.Sm0.real()) ||
      !std::isfinite(spec.Sm0.imag()))
    throw ValidationError("initial_state", "must be finite");
  if ((spec.variant == Variant::kContinuous ||
       spec.variant == Variant::kContinuousSpont) &&
      !(p.Gamma > 0.0))
    throw ValidationError("Gamma", "continuous variants need Gamma > 0");
}

MfTrajectory run_scenario(const ScenarioSpec& spec, const PhysParams& p,
                          const ode::IntegrationPolicy& policy) {
  check(spec, p);
  ode::IntegrationPolicy pol = policy;
  pol.sample_interval = spec.sample_interval;
  pol.record_stride = spec.record_stride;
  if (spec.variant == Variant::kNonadiabatic &&
      pol.max_step() > 0.1 / p.kappa * (1.0 + 1e-12))
    throw StiffnessError(0.0, "step bound does not resolve kappa (need dt <= 0.1/kappa)");

  MeanFieldState s0;
  s0.Sz = spec.Sz0;
  s0.Sm = spec.Sm0;
  s0.b = spec.b0 ? *spec.b0 : adiabatic_field(spec.Sm0, p);

  const auto sys = make_system(spec.variant, p);
  const auto raw = ode::integrate(sys, pack(spec.variant, s0), 0.0,
                                  spec.duration, pol);

  MfTrajectory out;
  out.t = raw.t;
  out.Sz.reserve(raw.t.size());
  out.Sm.reserve(raw.t.size());
  out.b.reserve(raw.t.size());
  for (const auto& y : raw.y) {
    const auto s = unpack(spec.variant, y);
    out.Sz.push_back(s.Sz);
    out.Sm.push_back(s.Sm);
    out.b.push_back(spec.variant == Variant::kNonadiabatic
                        ? s.b
                        : adiabatic_field(s.Sm, p));
  }
  return out;
}

MfTrajectory run_scenario(const ScenarioSpec& spec, const PhysParams& p) {
  return run_scenario(spec, p, default_policy(spec.variant, p));
}

double max_bound_excess(const MfTrajectory& traj, double N) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < traj.size(); ++i) {
    worst = std::max(worst, std::abs(traj.Sz[i]) - 0.5 * N);
    worst = std::max(worst, std::abs(traj.Sm[i]) - 0.5 * N);
  }
  return worst;
}

double burst_fwhm(const MfTrajectory& traj) {
  const std::size_t n = traj.size();
  if (n < 3) throw NumericError("trajectory too short for a burst width");
  std::size_t ip = 0;
  double peak = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::norm(traj.Sm[i]);
    if (v > peak) {
      peak = v;
      ip = i;
    }
  }
  const double half = 0.5 * peak;
  auto crossing = [&](std::size_t a, std::size_t b) {
    const double va = std::norm(traj.Sm[a]);
    const double vb = std::norm(traj.Sm[b]);
    return traj.t[a] + (half - va) / (vb - va) * (traj.t[b] - traj.t[a]);
  };
  std::size_t lo = ip;
  while (lo > 0 && std::norm(traj.Sm[lo]) > half) --lo;
  std::size_t hi = ip;
  while (hi + 1 < n && std::norm(traj.Sm[hi]) > half) ++hi;
  if (std::norm(traj.Sm[lo]) > half || std::norm(traj.Sm[hi]) > half)
    throw NumericError("burst not contained in the trajectory");
  return crossing(hi - 1, hi) - crossing(lo, lo + 1);
}

}  // namespace srl::mf
