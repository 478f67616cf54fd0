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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "srlaser/analytics.hpp"
#include "srlaser/meanfield.hpp"

using namespace srl;
using namespace srl::mf;

namespace {

PhysParams fig1() { return PhysParams::from_hz(4e3, 2e5, 0.0, 0.0, 1e3); }

// Relaxation scenario: N = 1e5, Gamma_R = v/w0 = 5e5 1/s.
PhysParams fig2() {
  auto p = PhysParams::from_hz(3e3, 1e6, 7e3, 0.0, 1e5);
  p.Gamma = p.N * 5e5;
  return p;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("variant names round-trip") {
  for (auto v : {Variant::kPulsed, Variant::kContinuous, Variant::kContinuousSpont,
                 Variant::kNonadiabatic})
    CHECK(parse_variant(to_string(v)) == v);
  CHECK_THROWS_AS(parse_variant("adiabatic"), ValidationError);
}

TEST_CASE("pulsed rhs") {
  const auto p = fig1();
  const double a = 4.0 * p.purcell();
  SUBCASE("fully inverted state is stationary") {
    const auto d = rhs_pulsed({0.5 * p.N, 0.0}, p);
    CHECK(d.Sz == 0.0);
    CHECK(d.Sm == Complex(0.0, 0.0));
  }
  SUBCASE("zero inversion freezes the dipole") {
    const Complex sm(3.0, -4.0);
    const auto d = rhs_pulsed({0.0, sm}, p);
    CHECK(d.Sm == Complex(0.0, 0.0));
    CHECK(d.Sz == doctest::Approx(-a * 25.0));
  }
  SUBCASE("general state") {
    const auto d = rhs_pulsed({120.0, Complex(1.0, 2.0)}, p);
    CHECK(d.Sz == doctest::Approx(-a * 5.0));
    CHECK(std::abs(d.Sm - a * 120.0 * Complex(1.0, 2.0)) < 1e-9 * a * 120.0);
  }
}

TEST_CASE("continuous rhs adds loading") {
  auto p = fig1();
  const MeanFieldState s{123.0, Complex(7.0, -2.0)};
  SUBCASE("Gamma = 0 reduces to pulsed") {
    const auto a = rhs_continuous(s, p);
    const auto b = rhs_pulsed(s, p);
    CHECK(a.Sz == b.Sz);
    CHECK(a.Sm == b.Sm);
  }
  p.Gamma = kTwoPi * 5e4;
  SUBCASE("loading terms") {
    const auto a = rhs_continuous(s, p);
    const auto b = rhs_pulsed(s, p);
    CHECK(a.Sz - b.Sz == doctest::Approx(0.5 * p.Gamma - p.Gamma * s.Sz / p.N));
    CHECK(std::abs((a.Sm - b.Sm) + p.Gamma / p.N * s.Sm) < 1e-9);
  }
  SUBCASE("fully inverted point is fixed") {
    CHECK(rhs_continuous({0.5 * p.N, 0.0}, p).Sz == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("closed-form steady state with gamma = 0") {
    const auto ss = mf_steady_state(p);
    REQUIRE(ss.superradiant);
    const auto d = rhs_continuous({ss.Sz, std::sqrt(ss.Splus_sq)}, p);
    CHECK(std::abs(d.Sz) <= 1e-9 * p.N * p.gamma_r());
    CHECK(std::abs(d.Sm) <= 1e-9 * p.N * p.gamma_r());
  }
}

TEST_CASE("continuous rhs with spontaneous emission") {
  auto p = fig2();
  const MeanFieldState s{2e4, Complex(300.0, 10.0)};
  SUBCASE("gamma = 0 reduces to continuous") {
    p.gamma = 0.0;
    const auto a = rhs_continuous_spont(s, p);
    const auto b = rhs_continuous(s, p);
    CHECK(a.Sz == b.Sz);
    CHECK(a.Sm == b.Sm);
  }
  SUBCASE("stated form") {
    const double a = 4.0 * p.purcell();
    const auto d = rhs_continuous_spont(s, p);
    const double dSz = -a * std::norm(s.Sm) - p.gamma * (s.Sz + p.N / 2) + p.Gamma / 2 -
                       p.Gamma / p.N * s.Sz;
    const Complex dSm = (a * s.Sz - p.gamma / 2 - p.Gamma / p.N) * s.Sm;
    CHECK(d.Sz == doctest::Approx(dSz).epsilon(1e-12));
    CHECK(std::abs(d.Sm - dSm) <= 1e-12 * std::abs(dSm));
  }
  SUBCASE("burst threshold without loading") {
    p.Gamma = 0.0;
    const double sz_thr = p.gamma / (8.0 * p.purcell());
    CHECK(std::abs(rhs_continuous_spont({1.1 * sz_thr, 1e-6}, p).Sm) > 0.0);
    CHECK(rhs_continuous_spont({1.1 * sz_thr, 1e-6}, p).Sm.real() > 0.0);
    CHECK(rhs_continuous_spont({0.9 * sz_thr, 1e-6}, p).Sm.real() < 0.0);
  }
  SUBCASE("trivial fixed point") {
    const auto ss = mf_steady_state(p);
    const auto d = rhs_continuous_spont({ss.Sz_trivial, 0.0}, p);
    CHECK(std::abs(d.Sz) <= 1e-12 * p.N * p.gamma_r());
    CHECK(d.Sm == Complex(0.0, 0.0));
  }
  SUBCASE("lasing fixed point") {
    const auto ss = mf_steady_state(p);
    REQUIRE(ss.superradiant);
    const auto d = rhs_continuous_spont({ss.Sz, std::sqrt(ss.Splus_sq)}, p);
    CHECK(std::abs(d.Sz) <= 1e-9 * p.N * p.gamma_r());
    CHECK(std::abs(d.Sm) <= 1e-9 * p.N * p.gamma_r());
  }
}

TEST_CASE("non-adiabatic rhs") {
  auto p = fig2();
  SUBCASE("stated form") {
    const MeanFieldState s{1e3, Complex(30.0, 4.0), Complex(-2.0, 5.0)};
    p.gamma = 0.0;
    const auto d = rhs_nonadiabatic(s, p);
    CHECK(std::abs(d.b - (-0.5 * p.kappa * s.b - kI * p.g * s.Sm)) < 1e-9 * p.kappa);
    CHECK(std::abs(d.Sm - (2.0 * kI * p.g * s.Sz * s.b - p.Gamma / p.N * s.Sm)) <
          1e-9 * p.kappa);
    const Complex dz = kI * p.g * (s.Sm * std::conj(s.b) - std::conj(s.Sm) * s.b) +
                       p.Gamma / 2 - p.Gamma * s.Sz / p.N;
    CHECK(d.Sz == doctest::Approx(dz.real()).epsilon(1e-12));
  }
  SUBCASE("adiabatic field is the cavity fixed point") {
    const Complex sm(40.0, -7.0);
    const auto d = rhs_nonadiabatic({0.0, sm, adiabatic_field(sm, p)}, p);
    CHECK(std::abs(d.b) < 1e-9 * std::abs(p.g * sm));
    CHECK(std::abs(adiabatic_field(sm, p) - (-2.0 * kI * p.g / p.kappa * sm)) < 1e-15);
  }
  SUBCASE("frozen atoms: field relaxes to the adiabatic value") {
    const MeanFieldState atoms{2e4, Complex(500.0, 100.0)};
    ode::OdeSystem sys{1, [&](double, std::span<const Complex> y, std::span<Complex> dy) {
                         MeanFieldState s = atoms;
                         s.b = y[0];
                         dy[0] = rhs_nonadiabatic(s, p).b;
                       }};
    const auto tr = ode::integrate(sys, {0.0}, 0.0, 20.0 / p.kappa,
                                   ode::IntegrationPolicy::fixed_step(0.01 / p.kappa));
    const Complex target = adiabatic_field(atoms.Sm, p);
    CHECK(std::abs(tr.y.back()[0] - target) < 0.01 * std::abs(target));
  }
  SUBCASE("empty atoms: field decays at kappa/2") {
    p.Gamma = 0.0;
    p.gamma = 0.0;
    ScenarioSpec spec;
    spec.variant = Variant::kNonadiabatic;
    spec.Sz0 = 0.0;
    spec.Sm0 = 0.0;
    spec.b0 = Complex(1.0, 1.0);
    spec.duration = 4.0 / p.kappa;
    spec.sample_interval = 0.5 / p.kappa;
    const auto tr = run_scenario(spec, p);
    for (std::size_t i = 0; i < tr.size(); ++i) {
      const Complex expect = Complex(1.0, 1.0) * std::exp(-0.5 * p.kappa * tr.t[i]);
      CHECK(std::abs(tr.b[i] - expect) < 1e-7);
    }
  }
}

TEST_CASE("non-adiabatic runs need a step that resolves kappa") {
  const auto p = fig2();
  ScenarioSpec spec;
  spec.variant = Variant::kNonadiabatic;
  spec.Sz0 = 0.0;
  spec.duration = 1e-6;
  CHECK_THROWS_AS(run_scenario(spec, p, ode::IntegrationPolicy::fixed_step(1.0 / p.kappa)),
                  StiffnessError);
  CHECK_NOTHROW(run_scenario(spec, p, ode::IntegrationPolicy::fixed_step(0.05 / p.kappa)));
}

TEST_CASE("scenario validation") {
  auto p = fig1();
  ScenarioSpec spec = ScenarioSpec::pulsed_default(p, 1e-5);
  CHECK(spec.Sm0 == Complex(1.0, 0.0));
  spec.variant = Variant::kContinuous;
  CHECK_THROWS_AS(check(spec, p), ValidationError);
  spec.variant = Variant::kPulsed;
  spec.duration = 0.0;
  CHECK_THROWS_AS(check(spec, p), ValidationError);
}

TEST_CASE("pulsed burst from the default seed") {
  const auto p = fig1();
  auto spec = ScenarioSpec::pulsed_default(p, 20e-6);
  spec.sample_interval = 2e-8;
  const auto tr = run_scenario(spec, p);
  CHECK(tr.Sz.back() < -0.49 * p.N);
  // Single peak of |Sm| that decays again.
  std::size_t peaks = 0;
  for (std::size_t i = 1; i + 1 < tr.size(); ++i) {
    const double a = std::abs(tr.Sm[i - 1]), b = std::abs(tr.Sm[i]), c = std::abs(tr.Sm[i + 1]);
    if (b > a && b >= c && b > 0.1 * p.N) ++peaks;
  }
  CHECK(peaks == 1);
  CHECK(std::abs(tr.Sm.back()) < 0.05 * p.N);
  CHECK(max_bound_excess(tr, p.N) < 1e-6 * p.N);
  // Reconstructed field.
  for (std::size_t i = 0; i < tr.size(); i += 97)
    CHECK(std::abs(tr.b[i] - adiabatic_field(tr.Sm[i], p)) < 1e-12 * (1.0 + std::abs(tr.b[i])));
}

TEST_CASE("pulsed dynamics conserves the Bloch length") {
  const auto p = fig1();
  auto spec = ScenarioSpec::pulsed_default(p, 20e-6);
  spec.sample_interval = 1e-8;
  const auto tr = run_scenario(spec, p);
  const double n0 = tr.at(0).bloch_norm_sq();
  double worst = 0.0;
  for (std::size_t i = 0; i < tr.size(); ++i)
    worst = std::max(worst, rel(tr.at(i).bloch_norm_sq(), n0));
  CHECK(worst < 1e-6);
}

TEST_CASE("rk4 and rk45 agree on the pulsed burst") {
  const auto p = fig1();
  auto spec = ScenarioSpec::pulsed_default(p, 10e-6);
  spec.sample_interval = 1e-7;
  const auto a = run_scenario(spec, p);
  const auto b = run_scenario(spec, p, ode::IntegrationPolicy::fixed_step(2e-9));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::abs(a.Sz[i] - b.Sz[i]) < 1e-5 * p.N);
    CHECK(std::abs(a.Sm[i] - b.Sm[i]) < 1e-5 * p.N);
  }
}

TEST_CASE("burst width scales as kappa/(N g^2)") {
  auto p = fig1();
  double prev = 0.0;
  for (double N : {250.0, 500.0, 1000.0, 2000.0}) {
    p.N = N;
    auto spec = ScenarioSpec::pulsed_default(p, 40e-6 * 1000.0 / N);
    spec.sample_interval = spec.duration / 20000.0;
    const double w = burst_fwhm(run_scenario(spec, p));
    if (prev > 0.0) CHECK(prev / w == doctest::Approx(2.0).epsilon(0.1));
    prev = w;
  }
}

TEST_CASE("phase covariance") {
  const auto p = fig1();
  auto spec = ScenarioSpec::pulsed_default(p, 10e-6);
  spec.sample_interval = 1e-7;
  const auto a = run_scenario(spec, p);
  const Complex phase = std::polar(1.0, 0.7);
  spec.Sm0 *= phase;
  const auto b = run_scenario(spec, p);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::abs(b.Sm[i] - phase * a.Sm[i]) < 1e-6 * p.N);
    CHECK(std::abs(b.Sz[i] - a.Sz[i]) < 1e-6 * p.N);
  }
}

TEST_CASE("metastable start stays constant") {
  const auto p = fig1();
  ScenarioSpec spec;
  spec.Sz0 = 0.5 * p.N;
  spec.duration = 1e-4;
  const auto tr = run_scenario(spec, p);
  for (std::size_t i = 0; i < tr.size(); ++i) {
    CHECK(tr.Sz[i] == 0.5 * p.N);
    CHECK(tr.Sm[i] == Complex(0.0, 0.0));
  }
}

TEST_CASE("relaxation to steady state on the 1/Gamma_R scale") {
  const auto p = fig2();
  ScenarioSpec spec;
  spec.variant = Variant::kContinuousSpont;
  spec.Sz0 = 0.5 * p.N;
  spec.Sm0 = 0.03 * p.N;
  spec.duration = 40.0 / p.gamma_r();
  spec.sample_interval = spec.duration / 8000.0;
  const auto tr = run_scenario(spec, p);
  const auto ss = mf_steady_state(p);
  REQUIRE(ss.superradiant);
  // First burst overshoots the steady dipole, then the train damps out.
  double peak = 0.0;
  for (std::size_t i = 0; i < tr.size() / 10; ++i) peak = std::max(peak, std::abs(tr.Sm[i]));
  CHECK(peak > 1.5 * std::sqrt(ss.Splus_sq));
  CHECK(rel(std::norm(tr.Sm.back()), ss.Splus_sq) < 1e-3);
  CHECK(rel(tr.Sz.back(), ss.Sz) < 1e-3);
  CHECK(max_bound_excess(tr, p.N) < 1e-6 * p.N);
}

TEST_CASE("adiabatic and non-adiabatic trajectories overlay") {
  auto p = PhysParams::from_hz(3e3, 5e6, 0.0, 2e4 * 2e4, 2e4);
  ScenarioSpec spec;
  spec.variant = Variant::kContinuous;
  spec.Sz0 = 0.0;
  spec.Sm0 = 0.03 * p.N;
  spec.duration = 5.0 / p.gamma_r();
  spec.sample_interval = spec.duration / 500.0;
  const auto a = run_scenario(spec, p);
  spec.variant = Variant::kNonadiabatic;
  const auto b = run_scenario(spec, p);
  REQUIRE(a.size() == b.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a.Sz[i] - b.Sz[i]));
    worst = std::max(worst, std::abs(std::abs(a.Sm[i]) - std::abs(b.Sm[i])));
  }
  CHECK(worst < 0.02 * p.N);
}

TEST_CASE("long-time limits reach a fixed point") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 5; ++k) {
    const double N = 100.0 * std::pow(10.0, u(rng));
    auto p = PhysParams::from_hz(200.0, 1e5, std::pow(10.0, -1.0 + 2.0 * u(rng)),
                                 N * std::pow(10.0, 1.0 + u(rng)), N);
    ScenarioSpec spec;
    spec.variant = Variant::kContinuousSpont;
    spec.Sz0 = 0.0;
    spec.Sm0 = 0.3 * N;
    spec.duration = 60.0 / std::min(p.gamma_r(), std::max(p.gamma, 1e-300) + p.gamma_r());
    const auto tr = run_scenario(spec, p);
    const auto ss = mf_steady_state(p);
    const MeanFieldState last = tr.at(tr.size() - 1);
    const auto d = rhs_continuous_spont(last, p);
    const double res = std::max(std::abs(d.Sz), std::abs(d.Sm)) / (p.gamma_r() + p.gamma);
    CHECK(res <= 1e-6 * N);
    const double target = ss.Sz_active();
    CHECK(std::abs(last.Sz - target) <= 1e-4 * N);
  }
}
