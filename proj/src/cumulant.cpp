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

#include "srlaser/cumulant.hpp"

#include <algorithm>
#include <cmath>

namespace srl::cumulant {

std::array<Complex, CumulantState::kSize> CumulantState::to_array() const {
  return {sm, sz, b, bdb, b2, szb, bdsm, bsm, spsm, spsp, szsm, szsz};
}

CumulantState CumulantState::from_array(std::span<const Complex> y) {
  CumulantState s;
  s.sm = y[0];
  s.sz = y[1];
  s.b = y[2];
  s.bdb = y[3];
  s.b2 = y[4];
  s.szb = y[5];
  s.bdsm = y[6];
  s.bsm = y[7];
  s.spsm = y[8];
  s.spsp = y[9];
  s.szsm = y[10];
  s.szsz = y[11];
  return s;
}

CumulantState CumulantState::uncorrelated(double sz, Complex sm, Complex b) {
  const Complex z(sz, 0.0);
  const Complex sp = std::conj(sm);
  CumulantState s;
  s.sm = sm;
  s.sz = z;
  s.b = b;
  s.bdb = std::norm(b);
  s.b2 = b * b;
  s.szb = z * b;
  s.bdsm = std::conj(b) * sm;
  s.bsm = b * sm;
  s.spsm = sp * sm;
  s.spsp = sp * sp;
  s.szsm = z * sm;
  s.szsz = z * z;
  return s;
}

Complex cumulant_factor3(Complex x1x2, Complex x2x3, Complex x3x1, Complex x1,
                         Complex x2, Complex x3) {
  return x1x2 * x3 + x2x3 * x1 + x3x1 * x2 - 2.0 * x1 * x2 * x3;
}

namespace {

void require_model(const PhysParams& p) {
  if (p.N < 2.0) throw ValidationError("N", "cumulant system needs N >= 2");
  if (p.gamma != 0.0)
    throw ValidationError("gamma", "cumulant system has no spontaneous emission");
}

}  // namespace

CumulantState rhs_cumulant(const CumulantState& s, const PhysParams& p) {
  require_model(p);
  const double g = p.g;
  const double k = p.kappa;
  const double N = p.N;
  const double G = p.Gamma;
  const double gN = G / N;          // single-atom replacement
  const double gP = G / (N - 1.0);  // pair replacement
  const Complex ig = kI * g;

  const Complex sm = s.sm, sz = s.sz, b = s.b;
  const Complex sp = std::conj(sm);
  const Complex bd = std::conj(b);
  const Complex bdb = s.bdb, b2 = s.b2;
  const Complex szb = s.szb, bdsz = std::conj(s.szb);
  const Complex bdsm = s.bdsm, bsp = std::conj(s.bdsm);
  const Complex bsm = s.bsm, bdsp = std::conj(s.bsm);
  const Complex spsm = s.spsm;
  const Complex smsp = std::conj(s.spsm);
  const Complex spsp = s.spsp, smsm = std::conj(s.spsp);
  const Complex szsm = s.szsm, szsp = std::conj(s.szsm);
  const Complex szsz = s.szsz;
  const auto f3 = cumulant_factor3;

  CumulantState d;
  d.sm = 2.0 * ig * szb - gN * sm;
  d.sz = ig * bdsm - ig * bsp - gN * sz + G / (2.0 * N);
  d.b = -0.5 * k * b - ig * N * sm;
  d.bdb = -k * bdb - ig * N * (bdsm - bsp);
  d.b2 = -k * b2 - 2.0 * ig * N * bsm;

  // <b+ b s1->, <b b s1+>
  const Complex t_bdb_sm = f3(bdb, bsm, bdsm, bd, b, sm);
  const Complex t_bb_sp = f3(b2, bsp, bsp, b, b, sp);
  d.szb = -gN * szb + G / (2.0 * N) * b - 0.5 * k * szb -
          ig * (N - 1.0) * szsm + 0.5 * ig * sm + ig * t_bdb_sm - ig * t_bb_sp;

  // <b+ b s1z>
  const Complex t_bdb_sz = f3(bdb, szb, bdsz, bd, b, sz);
  d.bdsm = -gN * bdsm - 0.5 * k * bdsm + ig * (N - 1.0) * smsp +
           ig * (sz + 0.5) + 2.0 * ig * t_bdb_sz;

  // <b b s1z>
  const Complex t_bb_sz = f3(b2, szb, szb, b, b, sz);
  d.bsm = -gN * bsm - 0.5 * k * bsm - ig * (N - 1.0) * smsm + 2.0 * ig * t_bb_sz;

  // <b+ s1z s2->, <b s2z s1+>
  const Complex t_bd_sz_sm = f3(bdsz, szsm, bdsm, bd, sz, sm);
  const Complex t_b_sz_sp = f3(szb, szsp, bsp, b, sz, sp);
  d.spsm = -2.0 * gP * spsm - 2.0 * ig * (t_bd_sz_sm - t_b_sz_sp);

  // <b+ s1z s2+>, equal to <b+ s2z s1+> for identical atoms
  const Complex t_bd_sz_sp = f3(bdsz, szsp, bdsp, bd, sz, sp);
  d.spsp = -2.0 * gP * spsp - 2.0 * ig * (t_bd_sz_sp + t_bd_sz_sp);

  // <s1+ s2- b>, <s1- s2- b+>, <s1z s2z b>
  const Complex t_sp_sm_b = f3(spsm, bsm, bsp, sp, sm, b);
  const Complex t_sm_sm_bd = f3(smsm, bdsm, bdsm, sm, sm, bd);
  const Complex t_sz_sz_b = f3(szsz, szb, szb, sz, sz, b);
  d.szsm = -2.0 * gP * szsm + G / (2.0 * (N - 1.0)) * sm -
           ig * (t_sp_sm_b - t_sm_sm_bd - 2.0 * t_sz_sz_b);

  // <s1+ s2z b>, <s1- s2z b+>, <s1z s2+ b>, <s1z s2- b+>
  const Complex t_sp_sz_b = f3(szsp, szb, bsp, sp, sz, b);
  const Complex t_sm_sz_bd = f3(szsm, bdsz, bdsm, sm, sz, bd);
  const Complex t_sz_sp_b = f3(szsp, bsp, szb, sz, sp, b);
  const Complex t_sz_sm_bd = f3(szsm, bdsm, bdsz, sz, sm, bd);
  d.szsz = -2.0 * gP * szsz + G / (N - 1.0) * sz -
           ig * (t_sp_sz_b - t_sm_sz_bd + t_sz_sp_b - t_sz_sm_bd);
  return d;
}

ode::OdeSystem make_system(const PhysParams& p) {
  require_model(p);
  ode::OdeSystem sys;
  sys.dimension = CumulantState::kSize;
  sys.rhs = [p](double, std::span<const Complex> y, std::span<Complex> dy) {
    const auto d = rhs_cumulant(CumulantState::from_array(y), p).to_array();
    std::copy(d.begin(), d.end(), dy.begin());
  };
  return sys;
}

DerivedObservables derive(const CumulantState& s, const PhysParams& p) {
  const double N = p.N;
  DerivedObservables o;
  o.Sz_coll = N * s.sz.real();
  o.sigma = s.spsm.real();
  o.dipole_sq = 0.5 * N + N * (N - 1.0) * s.spsm.real();
  o.Sx_sq = 0.25 * N + 0.5 * N * (N - 1.0) * (s.spsm + s.spsp).real();
  o.Nnu = s.bdb.real();
  o.R = p.kappa * o.Nnu;
  return o;
}

ode::IntegrationPolicy default_policy(const PhysParams& p) {
  return ode::IntegrationPolicy::defaults_for(p);
}

CumulantTrajectory run_cumulant(const CumulantState& y0, const PhysParams& p,
                                double duration,
                                const ode::IntegrationPolicy& policy) {
  check(p);
  require_model(p);
  if (!(duration > 0.0)) throw ValidationError("duration", "must be positive");
  if (policy.max_step() > 0.1 / p.kappa * (1.0 + 1e-12))
    throw StiffnessError(0.0, "step bound does not resolve kappa (need dt <= 0.1/kappa)");

  const auto a = y0.to_array();
  const auto raw = ode::integrate(make_system(p),
                                  ode::StateVector(a.begin(), a.end()), 0.0,
                                  duration, policy);
  CumulantTrajectory out;
  out.t = raw.t;
  out.state.reserve(raw.t.size());
  out.derived.reserve(raw.t.size());
  for (const auto& y : raw.y) {
    out.state.push_back(CumulantState::from_array(y));
    out.derived.push_back(derive(out.state.back(), p));
  }
  return out;
}

ClosedFormState steady_state_closed_form(const PhysParams& p) {
  const auto c = cumulant_closed_form(p);
  ClosedFormState out;
  CumulantState& s = out.state;
  s.sz = c.sz;
  s.spsm = c.sigma;
  s.szsz = c.szsz;
  s.bdb = c.bdb;
  s.bdsm = c.bdsm;
  out.below_threshold = c.below_threshold;
  out.near_divergence = c.near_divergence;
  return out;
}

double residual_inf(const CumulantState& s, const PhysParams& p) {
  double r = 0.0;
  for (const auto& v : rhs_cumulant(s, p).to_array()) r = std::max(r, std::abs(v));
  return r;
}

}  // namespace srl::cumulant
