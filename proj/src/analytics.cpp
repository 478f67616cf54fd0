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

#include "srlaser/analytics.hpp"

#include <cmath>
#include <limits>

namespace srl {

namespace {

double collective_x(const PhysParams& p) {
  return p.collective_loading_parameter();
}

bool near_half(double x) {
  return std::abs(x - 0.5) < kDivergenceGuard * 0.5;
}

}  // namespace

SteadyStateMF mf_steady_state(const PhysParams& p) {
  const double ic = p.inverse_cooperativity();
  const double icp = p.inverse_loading_cooperativity();
  const double N = p.N;

  SteadyStateMF s;
  s.Sz = ic / 8.0 + icp / (4.0 * N);
  s.Splus_sq = icp / 8.0 - N * ic / 8.0 - (icp / (4.0 * N) + ic / 4.0) * s.Sz;
  s.superradiant = s.Splus_sq > 0.0;

  const double gr = p.gamma_r();
  s.Sz_trivial = (gr + p.gamma > 0.0) ? 0.5 * N * (gr - p.gamma) / (gr + p.gamma)
                                      : -0.5 * N;
  return s;
}

ThresholdBoundary threshold_boundary(const PhysParams& p) {
  const double N = p.N;
  const double x = collective_x(p);
  if (!(x > 0.5))
    throw NumericError("N^2 C' <= 1/2: no continuous superradiant regime");
  const double icp = p.inverse_loading_cooperativity();
  // 1/2 [sqrt(A) - B] rewritten as (A - B^2) / (2 (sqrt(A) + B)).
  const double A = icp * icp / (N * N) + 40.0 * icp + 16.0 * N * N;
  const double B = 3.0 * icp / N + 4.0 * N;
  ThresholdBoundary t;
  t.inv_C_crit = 4.0 * icp * (2.0 - icp / (N * N)) / (std::sqrt(A) + B);
  t.gamma_crit = p.purcell() * t.inv_C_crit;
  return t;
}

double inversion_threshold_excess(double x) {
  if (!(x > 0.5))
    throw NumericError("N^2 C' <= 1/2: no continuous superradiant regime");
  return (std::sqrt(1.0 + 40.0 * x + 16.0 * x * x) + 3.0 + 4.0 * x) /
         (16.0 * x - 8.0);
}

double inversion_cooperativity(const PhysParams& p) {
  const auto C = p.cooperativity();
  if (!C) throw ValidationError("gamma", "must be positive for Delta N * C");
  return 2.0 * mf_steady_state(p).Sz * *C;
}

PowerMetrics power_metrics(const PhysParams& p) {
  const double g2 = p.g * p.g;
  const double k = p.kappa;
  const double gr = p.gamma_r();
  const double y = p.gamma;
  const double N = p.N;

  PowerMetrics m;
  m.Splus_sq = k / (8.0 * g2) *
               ((gr - y) * N - y * y * k / (4.0 * g2) - k * gr * gr / (2.0 * g2) -
                3.0 * y * k * gr / (4.0 * g2));
  m.Nnu_over_N = 1.0 / (2.0 * N) *
                 (N / k * (gr - y) - y * y / (4.0 * g2) - gr * gr / (2.0 * g2) -
                  3.0 * y * gr / (4.0 * g2));
  m.Nnu = m.Nnu_over_N * N;
  m.R = k * m.Nnu;
  return m;
}

MeanFieldLinewidth linewidth_mf(const PhysParams& p,
                                std::optional<double> Sx_sq) {
  const double x = collective_x(p);
  if (!(x > 0.5))
    throw NumericError("N^2 C' <= 1/2: phase-drift linewidth diverges");
  const double sx2 = Sx_sq ? *Sx_sq : mf_steady_state(p).Splus_sq;
  if (!(sx2 > 0.0))
    throw NumericError("|Sx|^2 <= 0: not in the superradiant regime");

  MeanFieldLinewidth w;
  w.D = p.Gamma / (2.0 * sx2);
  w.domega = 0.5 * w.D;
  w.D_large_n = std::isinf(x) ? 4.0 * p.purcell()
                              : 4.0 * p.purcell() * x / (x - 0.5);
  w.domega_large_n = 0.5 * w.D_large_n;
  w.near_divergence = near_half(x);
  return w;
}

CumulantClosedForm cumulant_closed_form(const PhysParams& p) {
  check(p);
  if (!(p.Gamma > 0.0))
    throw ValidationError("Gamma", "cumulant steady state needs Gamma > 0");
  if (p.N < 2.0) throw ValidationError("N", "cumulant system needs N >= 2");

  const double N = p.N;
  const double r = p.r();
  const double Cp = *p.loading_cooperativity();
  const double M = 1.0 + N * (N + 2.0 * N * r - 2.0);
  const double P = 1.0 + 2.0 * r + 2.0 * Cp * (1.0 + N * N * (1.0 + 2.0 * r));
  const double K = 8.0 * Cp * (-1.0 + 4.0 * Cp * N - 2.0 * r) * M;

  CumulantClosedForm c;
  const double disc = P * P + K;
  if (disc < 0.0) {
    c.sz = std::numeric_limits<double>::quiet_NaN();
  } else {
    // (P - sqrt(P^2 + K)) / (8 C' M), rationalised.
    c.sz = (1.0 + 2.0 * r - 4.0 * Cp * N) / (P + std::sqrt(disc));
  }
  const double sz = c.sz;
  c.sigma = (1.0 - 4.0 * Cp * N + 2.0 * r -
             2.0 * (1.0 + 2.0 * r + 4.0 * Cp * N * (1.0 + N * r)) * sz +
             16.0 * Cp * N * N * r * sz * sz) /
            (8.0 * Cp * (N - 1.0) * N);
  c.szsz = (sz + 2.0 * (N - 1.0) * sz * sz) / (2.0 * N);
  c.bdb = p.Gamma * (1.0 - 2.0 * sz) / (2.0 * p.kappa);
  c.bdsm = p.gamma_r() * (sz - 0.5) / (2.0 * kI * p.g);

  const double x = collective_x(p);
  c.below_threshold = !(x > 0.5) || std::isnan(sz);
  c.near_divergence = near_half(x);
  return c;
}

double sigma_large_n(const PhysParams& p) {
  const double gr = p.gamma_r();
  return p.kappa * (gr / (p.g * p.g) - 4.0 / (2.0 * gr + p.kappa)) /
         (8.0 * p.N);
}

DipoleRatioExpansion dipole_ratio_expansion(const PhysParams& p) {
  const double g2 = p.g * p.g;
  const double k = p.kappa;
  const double gr = p.gamma_r();
  if (!(gr > 0.0))
    throw ValidationError("Gamma", "dipole ratio needs Gamma > 0");
  DipoleRatioExpansion e;
  e.leading = (8.0 * g2 + 2.0 * gr * k + k * k) / (2.0 * gr * k + k * k);
  e.first_order = (4.0 * g2 + gr * k) * (4.0 * g2 - gr * (2.0 * gr + k)) /
                  (2.0 * g2 * gr * (2.0 * gr + k));
  return e;
}

CumulantLinewidth linewidth_cumulant(const PhysParams& p, double sz,
                                     double sigma) {
  const double N = p.N;
  CumulantLinewidth w;
  w.sz = sz;
  w.sigma = sigma;
  w.Sx_sq = N / 4.0 + N * (N - 1.0) * sigma / 2.0;
  w.L_sq = N / 2.0 + N * (N - 1.0) * sigma;
  const double inv_tau =
      p.gamma_r() / w.Sx_sq *
      (N / 4.0 + N * (N - 1.0) / 2.0 * sigma + N * N / 2.0 * sz * (sz - 0.5));
  w.tau_c = 1.0 / inv_tau;
  w.domega = inv_tau;
  w.domega_large_n = p.Gamma / (2.0 * w.L_sq) * (1.0 - 4.0 * sigma);
  w.below_threshold = !(collective_x(p) > 0.5);
  return w;
}

CumulantLinewidth linewidth_cumulant(const PhysParams& p) {
  const auto c = cumulant_closed_form(p);
  auto w = linewidth_cumulant(p, c.sz, c.sigma);
  w.below_threshold = c.below_threshold;
  return w;
}

double linewidth_heuristic(double L, double sigma, double Gamma) {
  if (!(L > 0.0)) throw ValidationError("L", "dipole length must be positive");
  return Gamma / (2.0 * L * L) * (1.0 - sigma);
}

double domega_min(const PhysParams& p) { return 4.0 * p.purcell(); }

LinewidthReport linewidth_report(const PhysParams& p) {
  LinewidthReport r;
  r.domega_min = domega_min(p);
  if (collective_x(p) > 0.5 && mf_steady_state(p).superradiant)
    r.mf = linewidth_mf(p);
  if (p.Gamma > 0.0 && p.N >= 2.0) {
    auto w = linewidth_cumulant(p);
    if (!w.below_threshold && w.L_sq > 0.0) {
      r.D_heuristic = linewidth_heuristic(std::sqrt(w.L_sq), w.sigma, p.Gamma);
      r.cumulant = w;
    }
  }
  return r;
}

}  // namespace srl
