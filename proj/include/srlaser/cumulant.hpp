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

#include <array>
#include <vector>

#include "srlaser/analytics.hpp"
#include "srlaser/ode.hpp"
#include "srlaser/params.hpp"

namespace srl::cumulant {

/// First and second moments for identical atoms 1, 2 and the cavity mode.
/// Moments not stored follow by conjugation, e.g. <s1+> = conj(sm),
/// <b s1+> = conj(bdsm), <s1- s2+> = conj(spsm).
struct CumulantState {
  Complex sm;    ///< <s1->
  Complex sz;    ///< <s1z>
  Complex b;     ///< <b>
  Complex bdb;   ///< <b+ b>, collective photon number
  Complex b2;    ///< <b b>
  Complex szb;   ///< <s1z b>
  Complex bdsm;  ///< <b+ s1->
  Complex bsm;   ///< <b s1->
  Complex spsm;  ///< <s1+ s2->
  Complex spsp;  ///< <s1+ s2+>
  Complex szsm;  ///< <s1z s2->
  Complex szsz;  ///< <s1z s2z>

  static constexpr std::size_t kSize = 12;
  std::array<Complex, kSize> to_array() const;
  static CumulantState from_array(std::span<const Complex> y);

  /// Product state of N identical spins with Bloch components (sz, sm) and a
  /// coherent cavity field b.
  static CumulantState uncorrelated(double sz, Complex sm, Complex b = {});
};

/// <X1 X2 X3> with the third-order cumulant set to zero.
Complex cumulant_factor3(Complex x1x2, Complex x2x3, Complex x3x1, Complex x1,
                         Complex x2, Complex x3);

/// Time derivative of every stored moment. Requires N >= 2 and gamma = 0.
CumulantState rhs_cumulant(const CumulantState& s, const PhysParams& p);

ode::OdeSystem make_system(const PhysParams& p);

struct DerivedObservables {
  double Sz_coll = 0.0;    ///< N sz
  double dipole_sq = 0.0;  ///< <Sx^2 + Sy^2>
  double Sx_sq = 0.0;      ///< <Sx^2>
  double Nnu = 0.0;        ///< <b+ b>
  double R = 0.0;          ///< kappa Nnu
  double sigma = 0.0;      ///< Re <s1+ s2->
};

DerivedObservables derive(const CumulantState& s, const PhysParams& p);

struct CumulantTrajectory {
  std::vector<double> t;
  std::vector<CumulantState> state;
  std::vector<DerivedObservables> derived;

  std::size_t size() const { return t.size(); }
};

/// Integrates the moment system without adiabatic elimination. The policy
/// must resolve kappa (step bound <= 0.1/kappa).
CumulantTrajectory run_cumulant(const CumulantState& y0, const PhysParams& p,
                                double duration,
                                const ode::IntegrationPolicy& policy);

/// Default policy: rk45 with dt_max = 0.05/max(kappa, N g^2/kappa, Gamma_R).
ode::IntegrationPolicy default_policy(const PhysParams& p);

struct ClosedFormState {
  CumulantState state;
  bool below_threshold = false;
  bool near_divergence = false;
};

/// Stationary lasing state: sm = b = b2 = bsm = szb = spsp = szsm = 0 and the
/// closed forms for sz, sigma, szsz, bdb and bdsm.
ClosedFormState steady_state_closed_form(const PhysParams& p);

/// ||rhs||_inf at `s`.
double residual_inf(const CumulantState& s, const PhysParams& p);

}  // namespace srl::cumulant
