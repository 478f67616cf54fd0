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

#include "srlaser/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "srlaser/kernels/dispatch.hpp"
#include "srlaser/parallel.hpp"

namespace srl::mc {

double SpinVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

double McConfig::burn_in_time() const {
  return burn_in ? *burn_in : 5.0 / params.gamma_r();
}

std::uint64_t McConfig::burn_in_events() const {
  return static_cast<std::uint64_t>(std::ceil(burn_in_time() * params.Gamma - 1e-9));
}

int McConfig::substeps_per_event() const {
  if (substeps > 0) return substeps;
  const double rate = 4.0 * params.purcell() * 0.5 * params.N;
  return std::max(1, static_cast<int>(std::ceil(interval() * rate / 0.1)));
}

void check(const McConfig& cfg) {
  check(cfg.params);
  if (cfg.params.gamma != 0.0)
    throw ValidationError("gamma", "Monte-Carlo runs without spontaneous emission");
  if (!(cfg.params.Gamma > 0.0))
    throw ValidationError("Gamma", "Monte-Carlo needs a positive loading rate");
  if (static_cast<double>(cfg.events) < 10.0 * cfg.params.N)
    throw ValidationError("events", "need at least 10 N loading events");
  if (cfg.realizations < 1)
    throw ValidationError("realizations", "need at least one realization");
  if (cfg.burn_in && !(*cfg.burn_in >= 0.0))
    throw ValidationError("burn_in", "must be non-negative");
  if (cfg.burn_in_events() >= cfg.events)
    throw ValidationError("burn_in", "burn-in covers the whole run");
}

namespace {

inline double coin(Rng& rng) { return (rng() >> 63) ? 0.5 : -0.5; }

}  // namespace

void load_atom(SpinVector& s, Rng& rng, EventRecord* log) {
  const double dx = coin(rng);
  const double dy = coin(rng);
  s.x += dx;
  s.y += dy;
  s.z += 0.5;
  if (log) {
    log->kind = EventKind::kLoad;
    log->a = dx;
    log->b = dy;
    log->noise_skipped = false;
  }
}

std::pair<SpinVector, SpinVector> orthogonal_basis(const SpinVector& u) {
  const double c[3] = {std::abs(u.x), std::abs(u.y), std::abs(u.z)};
  const int axis = static_cast<int>(std::min_element(c, c + 3) - c);
  SpinVector e;
  (axis == 0 ? e.x : axis == 1 ? e.y : e.z) = 1.0;
  const double d = e.x * u.x + e.y * u.y + e.z * u.z;
  SpinVector v1{e.x - d * u.x, e.y - d * u.y, e.z - d * u.z};
  const double n1 = v1.norm();
  v1 = {v1.x / n1, v1.y / n1, v1.z / n1};
  const SpinVector v2{u.y * v1.z - u.z * v1.y, u.z * v1.x - u.x * v1.z,
                      u.x * v1.y - u.y * v1.x};
  return {v1, v2};
}

bool unload_atom(SpinVector& s, double N, Rng& rng, EventRecord* log) {
  const double f = (N - 1.0) / N;
  s.x *= f;
  s.y *= f;
  s.z *= f;
  const double len = s.norm();
  if (log) log->kind = EventKind::kUnload;
  if (!(len > 0.0)) {
    if (log) log->noise_skipped = true;
    return false;
  }
  const SpinVector u{s.x / len, s.y / len, s.z / len};
  const auto [v1, v2] = orthogonal_basis(u);
  const double a = coin(rng);
  const double b = coin(rng);
  s.x += a * v1.x + b * v2.x;
  s.y += a * v1.y + b * v2.y;
  s.z += a * v1.z + b * v2.z;
  if (log) {
    log->a = a;
    log->b = b;
    log->noise_skipped = false;
  }
  return true;
}

SpinVector initial_state(double N, Rng& rng) {
  SpinVector s;
  s.z = 0.5 * N;
  const auto count = static_cast<std::uint64_t>(std::llround(N));
  for (std::uint64_t i = 0; i < count; ++i) {
    s.x += coin(rng);
    s.y += coin(rng);
  }
  return s;
}

void evolve_pulsed(SpinVector& s, double a, double h, int substeps) {
  // dSx = a Sz Sx, dSy = a Sz Sy, dSz = -a (Sx^2 + Sy^2)
  auto f = [a](const SpinVector& v) {
    return SpinVector{a * v.z * v.x, a * v.z * v.y, -a * (v.x * v.x + v.y * v.y)};
  };
  const double dt = h / substeps;
  for (int k = 0; k < substeps; ++k) {
    const SpinVector k1 = f(s);
    const SpinVector k2 = f({s.x + 0.5 * dt * k1.x, s.y + 0.5 * dt * k1.y, s.z + 0.5 * dt * k1.z});
    const SpinVector k3 = f({s.x + 0.5 * dt * k2.x, s.y + 0.5 * dt * k2.y, s.z + 0.5 * dt * k2.z});
    const SpinVector k4 = f({s.x + dt * k3.x, s.y + dt * k3.y, s.z + dt * k3.z});
    s.x += dt / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
    s.y += dt / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
    s.z += dt / 6.0 * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z);
  }
}

McTrajectory run_trajectory(const McConfig& cfg, std::size_t index) {
  check(cfg);
  const double N = cfg.params.N;
  const double h = cfg.interval();
  const double a = 4.0 * cfg.params.purcell();
  const int sub = cfg.substeps_per_event();

  Rng rng(cfg.seed ^ static_cast<std::uint64_t>(index));
  SpinVector s = initial_state(N, rng);

  McTrajectory out;
  out.sample_dt = h;
  const auto n = static_cast<std::size_t>(cfg.events);
  out.t.reserve(n);
  out.Sx.reserve(n);
  out.Sy.reserve(n);
  out.Sz.reserve(n);
  if (cfg.record_events) out.events.reserve(2 * n);

  for (std::uint64_t e = 0; e < cfg.events; ++e) {
    const double t = static_cast<double>(e) * h;
    out.t.push_back(t);
    out.Sx.push_back(s.x);
    out.Sy.push_back(s.y);
    out.Sz.push_back(s.z);
    if (std::abs(s.x) > N || std::abs(s.y) > N || std::abs(s.z) > N)
      ++out.excursions;

    if (cfg.atom_exchange) {
      EventRecord rec{e, EventKind::kLoad, t};
      load_atom(s, rng, cfg.record_events ? &rec : nullptr);
      if (cfg.record_events) out.events.push_back(rec);
    }
    evolve_pulsed(s, a, h, sub);
    if (cfg.atom_exchange) {
      EventRecord rec{e, EventKind::kUnload, t + h};
      unload_atom(s, N, rng, cfg.record_events ? &rec : nullptr);
      if (cfg.record_events) out.events.push_back(rec);
    }
  }
  return out;
}

Autocorrelation autocorrelation(std::span<const double> x, double sample_dt,
                                std::span<const std::size_t> lags) {
  const std::size_t n = x.size();
  for (std::size_t k : lags) {
    if (4 * k > n) throw NumericError("lag exceeds 1/4 of the retained window");
    if (n - k < kMinSamplesPerLag)
      throw NumericError("fewer than 100 samples for a lag");
  }
  Autocorrelation c;
  c.sample_dt = sample_dt;
  c.samples = n;
  c.lags.assign(lags.begin(), lags.end());
  c.C.resize(lags.size());
  kernels::lagged_dot(x, lags, c.C);
  c.dt.resize(lags.size());
  for (std::size_t j = 0; j < lags.size(); ++j) {
    c.C[j] /= static_cast<double>(n - lags[j]);
    c.dt[j] = static_cast<double>(lags[j]) * sample_dt;
  }
  return c;
}

namespace {

std::vector<std::size_t> spread_lags(std::size_t upper, std::size_t count) {
  std::vector<std::size_t> lags;
  const std::size_t stride = std::max<std::size_t>(1, upper / (count - 1));
  for (std::size_t k = 0; k <= upper; k += stride) lags.push_back(k);
  return lags;
}

}  // namespace

Autocorrelation autocorrelation_auto(std::span<const double> x,
                                     double sample_dt) {
  const std::size_t n = x.size();
  const std::size_t max_lag = std::min(n / 4, n > kMinSamplesPerLag ? n - kMinSamplesPerLag : 0);
  if (max_lag < 4) throw NumericError("too few samples for an autocorrelation");

  const auto probe = autocorrelation(x, sample_dt, spread_lags(max_lag, 256));
  std::size_t cut = max_lag;
  for (std::size_t j = 0; j < probe.C.size(); ++j) {
    if (probe.C[j] < 0.05 * probe.C[0]) {
      cut = probe.lags[j];
      break;
    }
  }
  const std::size_t upper = std::min(max_lag, std::max<std::size_t>(2 * cut, 8));
  return autocorrelation(x, sample_dt, spread_lags(upper, 129));
}

AutocorrFit fit_linewidth(const Autocorrelation& corr, double retained) {
  if (corr.C.empty() || !(corr.C[0] > 0.0))
    throw NumericError("autocorrelation at zero lag must be positive");
  const double thr = 0.05 * corr.C[0];
  std::size_t m = 0;
  while (m < corr.C.size() && corr.C[m] > thr) ++m;
  if (m < 3) throw NumericError("fewer than 3 lags above 5% of C(0)");
  const auto t = std::span(corr.dt).first(m);
  const auto y = std::span(corr.C).first(m);

  // Start from a log-linear fit.
  double st = 0, sl = 0, stt = 0, stl = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double l = std::log(y[i]);
    st += t[i];
    sl += l;
    stt += t[i] * t[i];
    stl += t[i] * l;
  }
  const double md = static_cast<double>(m);
  const double slope = (md * stl - st * sl) / (md * stt - st * st);
  double A = std::exp((sl - slope * st) / md);
  double tau = slope < 0.0 ? -1.0 / slope : t[m - 1];

  auto rss_at = [&](double a, double tt) {
    double r = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double e = y[i] - a * std::exp(-t[i] / tt);
      r += e * e;
    }
    return r;
  };

  // Levenberg-Marquardt on (A, tau).
  double lambda = 1e-3;
  double rss = rss_at(A, tau);
  bool converged = false;
  for (int it = 0; it < 500 && !converged; ++it) {
    double jaa = 0, jat = 0, jtt = 0, ga = 0, gt = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const double ex = std::exp(-t[i] / tau);
      const double da = ex;
      const double dtau = A * t[i] * ex / (tau * tau);
      const double r = y[i] - A * ex;
      jaa += da * da;
      jat += da * dtau;
      jtt += dtau * dtau;
      ga += da * r;
      gt += dtau * r;
    }
    bool accepted = false;
    for (int tries = 0; tries < 50 && !accepted; ++tries) {
      const double a11 = jaa * (1.0 + lambda), a22 = jtt * (1.0 + lambda);
      const double det = a11 * a22 - jat * jat;
      if (det == 0.0) break;
      const double dA = (a22 * ga - jat * gt) / det;
      const double dT = (a11 * gt - jat * ga) / det;
      const double nA = A + dA, nT = tau + dT;
      if (nT > 0.0) {
        const double nr = rss_at(nA, nT);
        if (nr <= rss) {
          const bool small = std::abs(dT) <= 1e-13 * nT && std::abs(dA) <= 1e-13 * std::abs(nA);
          A = nA;
          tau = nT;
          rss = nr;
          lambda = std::max(lambda * 0.1, 1e-15);
          accepted = true;
          converged = small;
          continue;
        }
      }
      lambda *= 10.0;
    }
    if (!accepted) break;
  }
  if (!(tau > 0.0) || !std::isfinite(tau)) throw NumericError("exponential fit failed");

  double jaa = 0, jat = 0, jtt = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double ex = std::exp(-t[i] / tau);
    const double dtau = A * t[i] * ex / (tau * tau);
    jaa += ex * ex;
    jat += ex * dtau;
    jtt += dtau * dtau;
  }
  const double s2 = m > 2 ? rss / static_cast<double>(m - 2) : 0.0;
  const double det = jaa * jtt - jat * jat;

  AutocorrFit fit;
  fit.amplitude = A;
  fit.tau_c = tau;
  fit.tau_err = det > 0.0 ? std::sqrt(s2 * jaa / det) : 0.0;
  fit.domega = 1.0 / tau;
  fit.domega_err = fit.tau_err / (tau * tau);
  fit.rms_residual = std::sqrt(rss / md);
  fit.points = m;
  fit.lower_bound = tau > retained;
  return fit;
}

RealizationResult analyse(const McConfig& cfg, const McTrajectory& traj,
                          std::size_t index) {
  const auto skip = static_cast<std::size_t>(cfg.burn_in_events());
  if (skip >= traj.size()) throw NumericError("burn-in removes every sample");
  const auto x = std::span(traj.Sx).subspan(skip);
  const double retained = static_cast<double>(x.size()) * traj.sample_dt;

  RealizationResult r;
  r.index = index;
  r.seed = cfg.seed ^ static_cast<std::uint64_t>(index);
  r.fit = fit_linewidth(autocorrelation_auto(x, traj.sample_dt), retained);
  r.excursions = traj.excursions;

  double sz = 0.0, perp = 0.0;
  for (std::size_t i = skip; i < traj.size(); ++i) {
    sz += traj.Sz[i];
    perp += traj.Sx[i] * traj.Sx[i] + traj.Sy[i] * traj.Sy[i];
  }
  r.mean_Sz = sz / static_cast<double>(x.size());
  r.mean_perp_sq = perp / static_cast<double>(x.size());

  const std::size_t half = x.size() / 2;
  auto half_width = [&](std::span<const double> part) {
    try {
      return fit_linewidth(autocorrelation_auto(part, traj.sample_dt),
                           static_cast<double>(part.size()) * traj.sample_dt)
          .domega;
    } catch (const NumericError&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  r.domega_first_half = half_width(x.first(half));
  r.domega_second_half = half_width(x.subspan(half));
  return r;
}

double Aggregate::sem() const {
  return n > 0 ? std / std::sqrt(static_cast<double>(n)) : 0.0;
}

Aggregate aggregate(std::span<const double> values) {
  Aggregate a;
  double sum = 0.0;
  for (double v : values) {
    if (std::isfinite(v)) {
      sum += v;
      ++a.n;
    }
  }
  if (a.n == 0) {
    a.mean = std::numeric_limits<double>::quiet_NaN();
    return a;
  }
  a.mean = sum / static_cast<double>(a.n);
  double ss = 0.0;
  for (double v : values) {
    if (std::isfinite(v)) ss += (v - a.mean) * (v - a.mean);
  }
  a.single_sample = a.n == 1;
  a.std = a.n > 1 ? std::sqrt(ss / static_cast<double>(a.n - 1)) : 0.0;
  return a;
}

EnsembleResult run_ensemble(const McConfig& cfg, unsigned threads) {
  check(cfg);
  EnsembleResult out;
  out.realizations.resize(cfg.realizations);
  parallel_for(cfg.realizations, threads, [&](std::size_t i) {
    try {
      out.realizations[i] = analyse(cfg, run_trajectory(cfg, i), i);
    } catch (const NumericError& e) {
      throw NumericError("realization " + std::to_string(i) + ": " + e.what());
    }
  });

  auto collect = [&](auto field) {
    std::vector<double> v;
    v.reserve(out.realizations.size());
    for (const auto& r : out.realizations) v.push_back(field(r));
    return aggregate(v);
  };
  out.domega = collect([](const RealizationResult& r) { return r.fit.domega; });
  out.mean_Sz = collect([](const RealizationResult& r) { return r.mean_Sz; });
  out.mean_perp_sq = collect([](const RealizationResult& r) { return r.mean_perp_sq; });
  out.domega_first_half = collect([](const RealizationResult& r) { return r.domega_first_half; });
  out.domega_second_half = collect([](const RealizationResult& r) { return r.domega_second_half; });
  return out;
}

}  // namespace srl::mc
