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

// Acceptance checks. Run with --criterion N; prints one PASS or FAIL line.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "srlaser/analytics.hpp"
#include "srlaser/cumulant.hpp"
#include "srlaser/io/manifest.hpp"
#include "srlaser/meanfield.hpp"
#include "srlaser/montecarlo.hpp"
#include "srlaser/spectrum.hpp"
#include "srlaser/sweep.hpp"

using namespace srl;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// 1: mean-field closed forms against long-time integration.
Outcome criterion1() {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto logu = [&](double lo, double hi) { return std::pow(10.0, lo + (hi - lo) * u(rng)); };
  double worst_sz = 0.0, worst_sp = 0.0;
  int accepted = 0;
  while (accepted < 20) {
    PhysParams p = PhysParams::from_hz(logu(2.0, 3.5), logu(5.0, 6.5), 0.0, 0.0, logu(2.0, 5.0));
    const double x = logu(std::log10(0.7), 2.0);
    p.Gamma = p.N * p.collective_rate() / x;
    p.gamma = u(rng) * 0.8 * threshold_boundary(p).gamma_crit;
    const auto ss = mf_steady_state(p);
    if (!ss.superradiant) continue;
    ++accepted;

    const auto v = mf::Variant::kContinuousSpont;
    auto policy = mf::default_policy(v, p);
    policy.rtol = 1e-11;
    policy.atol = 1e-14 * p.N;
    const double rate = p.gamma_r() + p.gamma;
    ode::SteadyStateCriterion crit;
    crit.eps = 1e-11 * p.N * rate;
    crit.window = 5.0 / rate;
    crit.max_time = 5000.0 / p.gamma_r();
    const auto y = ode::find_steady_state(
        mf::make_system(v, p), mf::pack(v, {0.5 * p.N, Complex(0.03 * p.N, 0.0), {}}), policy,
        crit);
    const auto s = mf::unpack(v, y);
    worst_sz = std::max(worst_sz, rel(s.Sz, ss.Sz));
    worst_sp = std::max(worst_sp, rel(std::norm(s.Sm), ss.Splus_sq));
  }
  const bool ok = worst_sz <= 1e-6 && worst_sp <= 1e-6;
  return {ok, "20 random sets, worst relative error Sz " + fmt("%.2e", worst_sz) + ", |S+|^2 " +
                  fmt("%.2e", worst_sp) + " (limit 1e-6)"};
}

// 2: cumulant closed form zeroes the moment equations and attracts the dynamics.
Outcome criterion2() {
  auto p = PhysParams::from_hz(3e3, 1e6, 0.0, 0.0, 2e4);
  p.Gamma = p.N * hz_to_angular(2e5);
  const auto cf = cumulant::steady_state_closed_form(p);
  const double scale = std::max({1.0, p.gamma_r(), p.kappa}) *
                       std::max({1.0, std::abs(cf.state.bdb), std::abs(cf.state.bdsm)});
  const double res = cumulant::residual_inf(cf.state, p) / scale;

  const double duration = 5000.0 / p.gamma_r();
  auto policy = cumulant::default_policy(p);
  policy.sample_interval = duration / 50.0;
  const auto tr = cumulant::run_cumulant(cumulant::CumulantState::uncorrelated(0.0, 0.3), p,
                                         duration, policy);
  const auto& last = tr.state.back();
  const double worst = std::max({rel(last.sz.real(), cf.state.sz.real()),
                                 rel(last.spsm.real(), cf.state.spsm.real()),
                                 rel(last.szsz.real(), cf.state.szsz.real()),
                                 rel(last.bdb.real(), cf.state.bdb.real()),
                                 std::abs(last.bdsm - cf.state.bdsm) / std::abs(cf.state.bdsm)});
  const bool ok = res <= 1e-8 && worst <= 1e-4 && !cf.below_threshold;
  return {ok, "N = 2e4: scaled residual " + fmt("%.2e", res) + " (limit 1e-8), relative distance after " +
                  "5000/Gamma_R " + fmt("%.2e", worst) + " (limit 1e-4)"};
}

// 3: pulsed dynamics conserves the Bloch vector length.
Outcome criterion3() {
  const auto p = PhysParams::from_hz(4e3, 2e5, 0.0, 0.0, 1e3);
  auto spec = mf::ScenarioSpec::pulsed_default(p, 12e-6);
  spec.sample_interval = 12e-6 / 4000.0;
  const auto tr = mf::run_scenario(spec, p);
  const double n0 = tr.at(0).bloch_norm_sq();
  double worst = 0.0;
  for (std::size_t i = 0; i < tr.size(); ++i)
    worst = std::max(worst, rel(tr.at(i).bloch_norm_sq(), n0));
  const bool full_burst = tr.Sz.back() < -0.99 * 0.5 * p.N;
  return {worst <= 1e-6 && full_burst,
          "max relative drift " + fmt("%.2e", worst) + " (limit 1e-6) over a full burst"};
}

// 4: burst width scales as kappa/(N g^2); late spectrum width near N g^2/kappa.
Outcome criterion4() {
  std::vector<double> scaled;
  double hwhm_ratio = 0.0;
  std::string widths;
  for (double N : {250.0, 500.0, 1000.0, 2000.0}) {
    const auto p = PhysParams::from_hz(4e3, 2e5, 0.0, 0.0, N);
    const double duration = 12e-6 * 1000.0 / N;
    auto spec = mf::ScenarioSpec::pulsed_default(p, duration);
    spec.sample_interval = duration / 8000.0;
    const auto tr = mf::run_scenario(spec, p);
    scaled.push_back(mf::burst_fwhm(tr) * p.collective_rate());
    widths += fmt(" %.3f", scaled.back());
    if (N == 1000.0)
      hwhm_ratio = spectrum::measure_linewidth(spectrum::from_trajectory(tr)) / p.collective_rate();
  }
  double mean = 0.0;
  for (double s : scaled) mean += s / static_cast<double>(scaled.size());
  double spread = 0.0;
  for (double s : scaled) spread = std::max(spread, rel(s, mean));
  const bool ok = spread <= 0.1 && hwhm_ratio >= 0.5 && hwhm_ratio <= 2.0;
  return {ok, "fwhm * N g^2/kappa =" + widths + ", spread " + fmt("%.3f", spread) +
                  " (limit 0.1); late HWHM / (N g^2/kappa) = " + fmt("%.3f", hwhm_ratio)};
}

// 5: phase-diagram sign agreement and linewidth collapse at the boundary.
Outcome criterion5() {
  sweep::SweepSpec spec;
  spec.fixed = PhysParams::from_hz(200.0, 1e5, 0.0, 0.0, 100.0);
  spec.axes = {{"gamma_hz", sweep::Scale::kLog, 0.01, 100.0, 20},
               {"Gamma_hz", sweep::Scale::kLog, 10.0, 1e4, 20}};
  const auto gammas = spec.axes[0].values();
  const auto Gammas = spec.axes[1].values();

  std::size_t mismatches = 0, compared = 0;
  for (double G : Gammas) {
    for (double gm : gammas) {
      PhysParams p = spec.fixed;
      sweep::apply(p, "Gamma_hz", G);
      sweep::apply(p, "gamma_hz", gm);
      const double x = p.collective_loading_parameter();
      bool lasing_cond = false;
      if (x > 0.5) {
        PhysParams q = p;
        q.gamma = 0.0;
        const double gc = threshold_boundary(q).gamma_crit;
        if (std::abs(p.gamma - gc) <= 1e-6 * gc) continue;
        lasing_cond = p.gamma < gc;
      } else if (std::abs(x - 0.5) <= 1e-6) {
        continue;
      }
      ++compared;
      if ((mf_steady_state(p).Splus_sq > 0.0) != lasing_cond) ++mismatches;
    }
  }

  const auto pd = sweep::run_phase_diagram(spec, 0);
  std::size_t rows = 0, located = 0, failed_points = 0;
  std::string bad;
  for (const auto& pt : pd.grid.points) failed_points += pt.error.empty() ? 0 : 1;
  for (std::size_t j = 0; j < Gammas.size(); ++j) {
    PhysParams q = spec.fixed;
    sweep::apply(q, "Gamma_hz", Gammas[j]);
    if (!(q.collective_loading_parameter() > 0.5)) continue;
    const double gc = angular_to_hz(threshold_boundary(q).gamma_crit);
    if (!(gc > gammas.front() && gc < gammas.back())) continue;
    ++rows;
    // First > 10x drop met when lowering gamma from the top of the row.
    std::size_t i_drop = gammas.size();
    for (std::size_t i = gammas.size() - 1; i > 0; --i) {
      const double hi = pd.grid.points[j * gammas.size() + i].domega;
      const double lo = pd.grid.points[j * gammas.size() + i - 1].domega;
      if (hi > 10.0 * lo) {
        i_drop = i;
        break;
      }
    }
    // The drop between cells i-1 and i must sit within one cell of gc.
    const bool ok = i_drop < gammas.size() && gc >= gammas[i_drop >= 2 ? i_drop - 2 : 0] &&
                    gc <= gammas[std::min(i_drop + 1, gammas.size() - 1)];
    if (ok) ++located;
    else bad += fmt(" Gamma/2pi=%.3g", Gammas[j]);
  }
  const bool ok = mismatches == 0 && compared > 0 && rows > 0 && located == rows &&
                  failed_points == 0;
  return {ok, std::to_string(mismatches) + " sign mismatches in " + std::to_string(compared) +
                  " points; collapse located in " + std::to_string(located) + "/" +
                  std::to_string(rows) + " rows" + (bad.empty() ? "" : ", off:" + bad) +
                  (failed_points ? ", " + std::to_string(failed_points) + " failed points" : "")};
}

// 6: large-N photon flux and intracavity photon number.
Outcome criterion6() {
  double worst_R = 0.0, worst_n = 0.0;
  int cases = 0;
  for (double N : {1e4, 1e5, 1e6}) {
    for (double x : {10.0, 30.0, 100.0, 1000.0}) {
      auto p = PhysParams::from_hz(3e3, 1e6, 0.0, 0.0, N);
      p.Gamma = N * p.collective_rate() / x;
      const double target_n = p.gamma_r() / (2.0 * p.kappa);
      const auto pm = power_metrics(p);
      const auto c = cumulant_closed_form(p);
      worst_R = std::max({worst_R, rel(pm.R / p.Gamma, 0.5), rel(p.kappa * c.bdb / p.Gamma, 0.5)});
      worst_n = std::max({worst_n, rel(pm.Nnu_over_N, target_n), rel(c.bdb / N, target_n)});
      ++cases;
    }
  }
  const double tol = 0.05 + 1e-12;
  return {worst_R <= tol && worst_n <= tol,
          std::to_string(cases) + " cases with N g^2/(kappa Gamma_R) >= 10: worst R/Gamma error " +
              fmt("%.4f", worst_R) + ", N_nu/N error " + fmt("%.4f", worst_n) + " (limit 0.05)"};
}

// 7: Monte-Carlo linewidth at N = 100 against the mean-field estimate.
Outcome criterion7() {
  const auto base = PhysParams::from_hz(300.0, 1e5, 0.0, 0.0, 100.0);
  const double unit = base.purcell();
  std::string rows;
  bool ok = true;
  std::uint64_t k = 0;
  auto run = [&](double x) {
    mc::McConfig cfg;
    cfg.params = base;
    cfg.params.Gamma = base.N * base.collective_rate() / x;
    cfg.seed = 7 + (k++ << 32);
    cfg.realizations = 50;
    cfg.events = sweep::mc_events(cfg.params, 200.0);
    return mc::run_ensemble(cfg, 0);
  };
  for (double x : {5.0, 10.0, 20.0, 50.0}) {
    const auto res = run(x);
    const double D = 4.0 * unit * x / (x - 0.5);
    const double ratio = res.domega.mean / D;
    ok = ok && ratio >= 0.5 && ratio <= 2.0;
    rows += fmt(" x=%g:", x) + fmt(" %.3f", res.domega.mean / unit) + fmt("/%.3f", D / unit) +
            fmt(" (vs D/2 %.2f)", 2.0 * ratio);
  }
  for (double x : {0.6, 0.8, 1.0}) {
    const auto res = run(x);
    bool finite = std::isfinite(res.domega.mean) && res.domega.mean > 0.0 &&
                  res.domega.n == 50;
    for (const auto& r : res.realizations) finite = finite && !r.fit.lower_bound;
    ok = ok && finite;
    rows += fmt(" x=%g:", x) + fmt(" %.3f", res.domega.mean / unit) + (finite ? "" : " DIVERGED");
  }
  return {ok, "domega kappa/g^2 (MC/eq):" + rows};
}

// 8: cumulant linewidth limits.
Outcome criterion8() {
  double worst_hi = 0.0, worst_lo = 0.0;
  int n_hi = 0, n_lo = 0;
  for (double N : {500.0, 2e4}) {
    const auto axis = sweep::Axis{"", sweep::Scale::kLog, 10.0, 1e7, 121}.values();
    for (double gr : axis) {
      auto p = PhysParams::from_hz(3e3, 1e6, 0.0, 0.0, N);
      p.Gamma = N * hz_to_angular(gr);
      const double x = p.collective_loading_parameter();
      if (x >= 100.0) {
        worst_hi = std::max(worst_hi, rel(linewidth_cumulant(p).domega, 4.0 * p.purcell()));
        ++n_hi;
      } else if (x <= 0.05) {
        worst_lo = std::max(worst_lo, rel(linewidth_cumulant(p).domega, p.gamma_r()));
        ++n_lo;
      }
    }
  }
  const bool ok = n_hi > 0 && n_lo > 0 && worst_hi <= 0.05 && worst_lo <= 0.2;
  return {ok, std::to_string(n_hi) + " points with N^2 C' >= 100, worst " + fmt("%.4f", worst_hi) +
                  " (limit 0.05); " + std::to_string(n_lo) + " points with N^2 C' <= 0.05, worst " +
                  fmt("%.4f", worst_lo) + " (limit 0.2)"};
}

// 9: sigma against its large-N form and 1/N scaling.
Outcome criterion9() {
  auto base = PhysParams::from_hz(3e3, 1e6, 0.0, 0.0, 1.0);
  const double gr = hz_to_angular(2e5);
  const double n_min = 100.0 / (gr / base.kappa);
  double worst = 0.0, worst_N = 0.0, agree_from = 0.0;
  std::size_t below = 0;
  std::vector<double> sN;
  const auto Ns = sweep::Axis{"", sweep::Scale::kLog, n_min, 1e7, 61}.values();
  for (double N : Ns) {
    PhysParams p = base;
    p.N = N;
    p.Gamma = N * gr;
    const auto c = cumulant_closed_form(p);
    below += c.below_threshold ? 1 : 0;
    const double e = c.below_threshold ? INFINITY : rel(c.sigma, sigma_large_n(p));
    if (e > worst) {
      worst = e;
      worst_N = N;
    }
    if (e > 0.05) agree_from = 0.0;
    else if (agree_from == 0.0) agree_from = N;
    sN.push_back(c.sigma * N);
  }
  const double drift = rel(sN.back(), sN[sN.size() - 11]);
  const bool ok = worst <= 0.05 && drift <= 0.01;
  return {ok, "N >= " + fmt("%g", n_min) + ": " + std::to_string(below) +
                  " points below threshold, worst relative error " + fmt("%.3g", worst) +
                  " at N = " + fmt("%g", worst_N) + " (limit 0.05), within 5 % only from N = " +
                  fmt("%.3g", agree_from) + "; sigma N drift over the last decade " +
                  fmt("%.2e", drift)};
}

// 10: seeded runs are byte-identical across thread counts and manifest reruns.
std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

int shell(const std::string& cmd) {
  const int rc = std::system((cmd + " > /dev/null 2>&1").c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

Outcome criterion10(const std::string& cli) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "srlaser-acceptance-10";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::string detail;
  bool ok = true;
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"mc", "mc --x 5 --realizations 6 --seed 42"},
      {"pulsed", "pulsed --seed 3"},
      {"cumulant", "cumulant --duration 5"},
  };
  for (const auto& [name, args] : runs) {
    const fs::path a = dir / (name + "_t1"), b = dir / (name + "_t3"), c = dir / (name + "_re");
    ok = ok && shell(cli + " " + args + " --threads 1 --out " + a.string()) == 0;
    ok = ok && shell(cli + " " + args + " --threads 3 --out " + b.string()) == 0;
    ok = ok && shell(cli + " rerun --manifest " + (a / "manifest.json").string() + " --out " +
                     c.string()) == 0;
    if (!ok) return {false, name + ": command failed"};
    const auto m = io::RunManifest::read(a / "manifest.json");
    const auto mc = io::RunManifest::read(c / "manifest.json");
    std::size_t same = 0;
    for (const auto& f : m.outputs) {
      const auto ref = slurp(a / f);
      if (ref == slurp(b / f) && ref == slurp(c / f)) ++same;
      else detail += " " + name + "/" + f + " differs;";
    }
    ok = ok && same == m.outputs.size() && !m.outputs.empty() && mc.outputs == m.outputs &&
         slurp(a / "config.txt") == slurp(c / "config.txt");
    detail += " " + name + ": " + std::to_string(same) + "/" + std::to_string(m.outputs.size()) +
              " files identical;";
  }
  fs::remove_all(dir);
  return {ok, "threads 1 vs 3 and manifest rerun:" + detail};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"srlaser acceptance checks"};
  int criterion = 0;
  std::string cli = SRLASER_CLI_PATH;
  app.add_option("--criterion", criterion, "1 to 10")->required()->check(CLI::Range(1, 10));
  app.add_option("--cli", cli, "Path of the srlaser executable");
  CLI11_PARSE(app, argc, argv);

  const std::map<int, std::function<Outcome()>> table = {
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
      {5, criterion5}, {6, criterion6}, {7, criterion7}, {8, criterion8},
      {9, criterion9}, {10, [&] { return criterion10(cli); }},
  };
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = table.at(criterion)();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << (out.pass ? "PASS" : "FAIL") << " criterion " << criterion << ": " << out.detail
            << " [" << fmt("%.1f", secs) << " s]\n";
  return out.pass ? 0 : 1;
}
