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

#include "srlaser/params.hpp"

namespace srl {

/// Relative distance from N^2 C' = 1/2 below which results are flagged.
inline constexpr double kDivergenceGuard = 1e-6;

/// Stationary points of the mean-field equations with loading and
/// spontaneous emission.
struct SteadyStateMF {
  double Sz = 0.0;        ///< lasing branch inversion
  double Splus_sq = 0.0;  ///< |<S+>|^2 on the lasing branch
  bool superradiant = false;
  double Sz_trivial = 0.0;  ///< (N/2)(Gamma_R - gamma)/(Gamma_R + gamma)

  /// Sz of the branch that is actually realised.
  double Sz_active() const { return superradiant ? Sz : Sz_trivial; }
  double Splus_sq_active() const { return superradiant ? Splus_sq : 0.0; }
};

SteadyStateMF mf_steady_state(const PhysParams& p);

struct ThresholdBoundary {
  double inv_C_crit = 0.0;  ///< critical kappa*gamma/g^2
  double gamma_crit = 0.0;  ///< lasing requires gamma < gamma_crit
};

/// Largest spontaneous emission rate compatible with continuous lasing for
/// the given g, kappa, Gamma and N (p.gamma is ignored). Throws NumericError
/// when N^2 C' <= 1/2, where no positive solution exists.
ThresholdBoundary threshold_boundary(const PhysParams& p);

/// 1/Q with Q = -3 - 4x + sqrt(1 + 40x + 16x^2), x = N^2 C'. The lasing
/// condition in terms of the steady-state inversion reads
/// Delta N * C > 1/4 + 1/Q.
double inversion_threshold_excess(double x);

/// Delta N * C = 2 Sz C on the lasing branch, equal to 1/4 + C/(2 N C').
/// Requires gamma > 0.
double inversion_cooperativity(const PhysParams& p);

struct PowerMetrics {
  double Splus_sq = 0.0;  ///< via the explicit power expression
  double Nnu_over_N = 0.0;
  double Nnu = 0.0;  ///< intracavity photon number
  double R = 0.0;    ///< photon emission rate kappa * Nnu, in 1/s
};

PowerMetrics power_metrics(const PhysParams& p);

struct MeanFieldLinewidth {
  double D = 0.0;  ///< Gamma / (2 |Sx|^2)
  double domega = 0.0;
  double D_large_n = 0.0;  ///< (4 g^2/kappa) x / (x - 1/2), x = N^2 C'
  double domega_large_n = 0.0;
  bool near_divergence = false;
};

/// Phase-drift linewidth. `Sx_sq` overrides the mean-field |Sx|^2. Throws
/// NumericError for N^2 C' <= 1/2 or a non-positive |Sx|^2.
MeanFieldLinewidth linewidth_mf(const PhysParams& p,
                                std::optional<double> Sx_sq = std::nullopt);

/// Steady-state single- and two-atom moments of the second-order cumulant
/// system (gamma = 0). Field moments follow from sz.
struct CumulantClosedForm {
  double sz = 0.0;
  double sigma = 0.0;  ///< <s1+ s2->
  double szsz = 0.0;
  double bdb = 0.0;         ///< collective photon number
  Complex bdsm{0.0, 0.0};   ///< <b+ s1->
  bool below_threshold = false;
  bool near_divergence = false;
};

/// Requires Gamma > 0 and N >= 2. Below N^2 C' = 1/2 the formula values are
/// returned with `below_threshold` set.
CumulantClosedForm cumulant_closed_form(const PhysParams& p);

/// Large-N estimate kappa (Gamma_R/g^2 - 4/(2 Gamma_R + kappa)) / (8 N).
double sigma_large_n(const PhysParams& p);

/// Two leading terms of <Sx^2 + Sy^2> / |S+_MF|^2 in powers of 1/N.
struct DipoleRatioExpansion {
  double leading = 0.0;
  double first_order = 0.0;  ///< coefficient of 1/N
  double at(double N) const { return leading + first_order / N; }
};

DipoleRatioExpansion dipole_ratio_expansion(const PhysParams& p);

struct CumulantLinewidth {
  double sz = 0.0;
  double sigma = 0.0;
  double Sx_sq = 0.0;  ///< N/4 + N(N-1) sigma / 2
  double L_sq = 0.0;   ///< N/2 + N(N-1) sigma
  double tau_c = 0.0;
  double domega = 0.0;          ///< 1/tau_c
  double domega_large_n = 0.0;  ///< Gamma (1 - 4 sigma) / (2 L^2)
  bool below_threshold = false;
};

/// Autocorrelation-time linewidth from the cumulant steady state, for
/// explicit sz and sigma (for example from an integrated state).
CumulantLinewidth linewidth_cumulant(const PhysParams& p, double sz,
                                     double sigma);
CumulantLinewidth linewidth_cumulant(const PhysParams& p);

/// Phase-drift heuristic including correlations: Gamma (1 - sigma)/(2 L^2).
double linewidth_heuristic(double L, double sigma, double Gamma);

/// Minimum HWHM deep in the superradiant regime, 4 g^2/kappa.
double domega_min(const PhysParams& p);

/// Every linewidth estimate at one operating point. Entries that do not apply
/// (for example below threshold) are left empty.
struct LinewidthReport {
  std::optional<MeanFieldLinewidth> mf;
  std::optional<CumulantLinewidth> cumulant;
  double domega_min = 0.0;
  std::optional<double> D_heuristic;
};

LinewidthReport linewidth_report(const PhysParams& p);

}  // namespace srl
