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

#include <array>
#include <cmath>
#include <random>

#include "srlaser/cumulant.hpp"

using namespace srl;
using namespace srl::cumulant;

namespace {

// Fast-relaxing operating point with the field kept explicit.
PhysParams relaxing() {
  auto p = PhysParams::from_hz(3e3, 1e6, 0.0, 0.0, 2000.0);
  p.Gamma = p.N * kTwoPi * 2e4;
  return p;
}

Complex random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  return {d(rng), d(rng)};
}

using Mat4 = std::array<std::array<Complex, 4>, 4>;

Mat4 mul(const Mat4& a, const Mat4& b) {
  Mat4 c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Mat4 add(const Mat4& a, const Mat4& b, Complex s = 1.0) {
  Mat4 c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) c[i][j] = a[i][j] + s * b[i][j];
  return c;
}

Complex trace(const Mat4& a) { return a[0][0] + a[1][1] + a[2][2] + a[3][3]; }

// Single-spin operator on atom `which` (0 or 1) of the basis |s1 s2>,
// with index 0 = excited, 1 = ground.
Mat4 embed(const std::array<std::array<Complex, 2>, 2>& op, int which) {
  Mat4 m{};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) {
          const Complex first = which == 0 ? op[a][c] : Complex(a == c ? 1.0 : 0.0);
          const Complex second = which == 1 ? op[b][d] : Complex(b == d ? 1.0 : 0.0);
          m[2 * a + b][2 * c + d] = first * second;
        }
  return m;
}

}  // namespace

TEST_CASE("third-order factorisation") {
  std::mt19937_64 rng(1);
  const Complex a = random_complex(rng), b = random_complex(rng), c = random_complex(rng);
  const Complex ab = random_complex(rng), bc = random_complex(rng), ca = random_complex(rng);
  CHECK(cumulant_factor3(ab, bc, ca, 0.0, 0.0, 0.0) == Complex(0.0, 0.0));
  CHECK(std::abs(cumulant_factor3(a * b, b * c, c * a, a, b, c) - a * b * c) < 1e-13);
  const Complex ref = ab * c + bc * a + ca * b - 2.0 * a * b * c;
  CHECK(std::abs(cumulant_factor3(ab, bc, ca, a, b, c) - ref) < 1e-13);
}

TEST_CASE("state packing round-trips") {
  std::mt19937_64 rng(2);
  std::array<Complex, CumulantState::kSize> y;
  for (auto& v : y) v = random_complex(rng);
  const auto s = CumulantState::from_array(y);
  CHECK(s.to_array() == y);
  CHECK(s.bdsm == y[6]);
  CHECK(s.szsz == y[11]);
}

TEST_CASE("model guards") {
  auto p = relaxing();
  const auto s = CumulantState::uncorrelated(0.5, 0.0);
  p.N = 1.5;
  CHECK_THROWS_AS(rhs_cumulant(s, p), ValidationError);
  p = relaxing();
  p.gamma = 1.0;
  CHECK_THROWS_AS(rhs_cumulant(s, p), ValidationError);
}

TEST_CASE("dark state is stationary") {
  auto p = relaxing();
  p.Gamma = 0.0;
  CumulantState s;
  s.sz = -0.5;
  for (const auto& v : rhs_cumulant(s, p).to_array()) CHECK(v == Complex(0.0, 0.0));
}

TEST_CASE("emission is seeded through the field-dipole correlator") {
  auto p = relaxing();
  p.Gamma = 0.0;
  const auto s = CumulantState::uncorrelated(0.5, 0.0);
  const auto d = rhs_cumulant(s, p);
  CHECK(d.spsm == Complex(0.0, 0.0));
  CHECK(std::abs(d.bdsm - kI * p.g) < 1e-12 * p.g);
}

TEST_CASE("closed-form steady state zeroes the right-hand side") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int tested = 0;
  while (tested < 20) {
    auto p = PhysParams::from_hz(1e3 * std::pow(10.0, u(rng)), 1e6 * std::pow(10.0, u(rng)), 0.0,
                                 0.0, std::pow(10.0, 2.0 + 3.0 * u(rng)));
    p.Gamma = p.N * p.kappa * std::pow(10.0, -3.0 + 2.0 * u(rng));
    if (p.collective_loading_parameter() < 0.6) continue;
    const auto cf = steady_state_closed_form(p);
    REQUIRE_FALSE(cf.below_threshold);
    const double scale = std::max({1.0, p.gamma_r(), p.kappa}) *
                         std::max({1.0, std::abs(cf.state.bdb), std::abs(cf.state.bdsm)});
    CHECK(residual_inf(cf.state, p) <= 1e-8 * scale);
    ++tested;
  }
}

TEST_CASE("closed-form field moments") {
  const auto p = relaxing();
  const auto cf = steady_state_closed_form(p);
  const auto c = cumulant_closed_form(p);
  CHECK(cf.state.sm == Complex(0.0, 0.0));
  CHECK(cf.state.b == Complex(0.0, 0.0));
  CHECK(cf.state.spsp == Complex(0.0, 0.0));
  CHECK(cf.state.sz.real() == c.sz);
  CHECK(cf.state.bdb.real() == doctest::Approx(p.Gamma * (1 - 2 * c.sz) / (2 * p.kappa)));
  CHECK(std::abs(cf.state.bdsm - p.gamma_r() * (c.sz - 0.5) / (2.0 * kI * p.g)) < 1e-12);
}

TEST_CASE("two-atom brute force of the collective second moments") {
  const std::array<std::array<Complex, 2>, 2> sp{{{0.0, 1.0}, {0.0, 0.0}}};
  const std::array<std::array<Complex, 2>, 2> sm{{{0.0, 0.0}, {1.0, 0.0}}};
  const std::array<std::array<Complex, 2>, 2> sx{{{0.0, 0.5}, {0.5, 0.0}}};
  const std::array<std::array<Complex, 2>, 2> sy{{{0.0, Complex(0, -0.5)}, {Complex(0, 0.5), 0.0}}};
  const Mat4 Sx = add(embed(sx, 0), embed(sx, 1));
  const Mat4 Sy = add(embed(sy, 0), embed(sy, 1));

  // Swap of the two atoms.
  Mat4 P{};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) P[2 * a + b][2 * b + a] = 1.0;

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    Mat4 A{};
    for (auto& row : A)
      for (auto& v : row) v = random_complex(rng);
    Mat4 Ad{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) Ad[i][j] = std::conj(A[j][i]);
    Mat4 rho = mul(A, Ad);
    rho = add(rho, mul(P, mul(rho, P)));
    const Complex tr = trace(rho);
    for (auto& row : rho)
      for (auto& v : row) v /= tr;

    auto expect = [&](const Mat4& op) { return trace(mul(rho, op)); };
    CumulantState s;
    s.spsm = expect(mul(embed(sp, 0), embed(sm, 1)));
    s.spsp = expect(mul(embed(sp, 0), embed(sp, 1)));
    PhysParams p = relaxing();
    p.N = 2.0;
    const auto o = derive(s, p);
    const double sx2 = expect(mul(Sx, Sx)).real();
    const double sy2 = expect(mul(Sy, Sy)).real();
    CHECK(o.Sx_sq == doctest::Approx(sx2).epsilon(1e-12));
    CHECK(o.dipole_sq == doctest::Approx(sx2 + sy2).epsilon(1e-12));
  }
}

TEST_CASE("integration needs a step that resolves kappa") {
  const auto p = relaxing();
  auto policy = default_policy(p);
  policy.dt_max = 1.0 / p.kappa;
  CHECK_THROWS_AS(run_cumulant(CumulantState::uncorrelated(0.5, 1e-2), p, 1e-6, policy),
                  StiffnessError);
}

TEST_CASE("long-time integration converges to the closed form") {
  const auto p = relaxing();
  auto policy = default_policy(p);
  policy.sample_interval = 10.0 / p.gamma_r();
  const auto tr = run_cumulant(CumulantState::uncorrelated(0.0, 0.3), p, 300.0 / p.gamma_r(), policy);
  const auto cf = steady_state_closed_form(p).state;
  const auto& last = tr.state.back();
  CHECK(last.sz.real() == doctest::Approx(cf.sz.real()).epsilon(1e-4));
  CHECK(last.spsm.real() == doctest::Approx(cf.spsm.real()).epsilon(1e-4));
  CHECK(last.szsz.real() == doctest::Approx(cf.szsz.real()).epsilon(1e-4));
  CHECK(last.bdb.real() == doctest::Approx(cf.bdb.real()).epsilon(1e-4));
  CHECK(std::abs(last.bdsm - cf.bdsm) < 1e-4 * std::abs(cf.bdsm));
  // Phase invariance: the coherent dipole dies out.
  CHECK(std::abs(last.sm) < 1e-6 * 0.3);
  CHECK(std::abs(last.b) < 1e-6 * std::abs(tr.state.front().b) + 1e-9);

  // Symmetric start with real sm keeps the Hermitian moments real.
  for (const auto& s : tr.state) {
    CHECK(std::abs(s.sz.imag()) <= 1e-9);
    CHECK(std::abs(s.szsz.imag()) <= 1e-9);
    CHECK(std::abs(s.bdb.imag()) <= 1e-9 * std::max(1.0, std::abs(s.bdb)));
  }
  // Derived observables stay physical.
  for (const auto& o : tr.derived) {
    CHECK(o.dipole_sq >= 0.0);
    CHECK(o.Sx_sq >= 0.0);
    CHECK(o.R == doctest::Approx(p.kappa * o.Nnu));
  }
}
