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

#include <cmath>
#include <limits>
#include <sstream>

#include "commands.hpp"
#include "srlaser/analytics.hpp"
#include "srlaser/montecarlo.hpp"
#include "srlaser/sweep.hpp"

namespace srl::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> log_space(double lo, double hi, std::size_t n) {
  return sweep::Axis{"", sweep::Scale::kLog, lo, hi, n}.values();
}

std::string script_header(const std::string& png, int rows, int cols) {
  std::ostringstream os;
  os << "set terminal pngcairo size " << 560 * cols << "," << 420 * rows << "\n"
     << "set output '" << png << "'\n"
     << "set datafile separator ','\n"
     << "set key autotitle columnhead\n";
  if (rows * cols > 1) os << "set multiplot layout " << rows << "," << cols << "\n";
  return os.str();
}

template <class F>
double or_nan(F&& f) {
  try {
    return f();
  } catch (const Error&) {
    return kNaN;
  }
}

void fig1(Context& ctx) {
  const auto p = ctx.params(fig1_params());
  const auto out = run_pulsed(ctx, p, PulsedOptions{});
  std::ostringstream gp;
  gp << script_header("fig1.png", 1, 3)
     << "set xlabel 't (s)'\nplot '" << out.trajectory << "' using 1:2 with lines title 'Sz', '"
     << out.trajectory << "' using 1:(sqrt($3**2+$4**2)) with lines title '|S-|'\n"
     << "set xlabel 'frequency (Hz)'\nplot ";
  for (std::size_t i = 0; i < out.spectra.size(); ++i)
    gp << (i ? ", " : "") << "'" << out.spectra[i] << "' using 1:2 with lines";
  gp << "\nset logscale xy\nset xlabel 't (s)'\nplot '" << out.linewidth
     << "' using 1:2 with lines title 'HWHM', '' using 1:3 with lines dt 2 title 'N g^2/kappa'\n"
     << "unset multiplot\n";
  ctx.text("fig1.gp", gp.str());
}

void fig2(Context& ctx) {
  const auto p = ctx.params(fig2_params(ctx.preset()));
  ContinuousOptions o;
  o.duration_relax = 15.0;
  o.samples = 6001;
  o.spectrum = false;
  const auto out = run_continuous(ctx, p, o);
  const auto ss = mf_steady_state(p);
  auto steady = ctx.csv("steady.csv", "srlaser.steady.v1", p, {"quantity", "value"});
  steady->row(std::vector<io::Cell>{std::string("Sz_mf"), ss.Sz_active()});
  steady->row(std::vector<io::Cell>{std::string("Splus_sq_mf"), ss.Splus_sq_active()});
  steady->close();
  std::ostringstream gp;
  gp << script_header("fig2.png", 1, 2) << "set xlabel 't (s)'\n"
     << "plot '" << out.trajectory << "' using 1:2 with lines title 'Sz'\n"
     << "plot '" << out.trajectory << "' using 1:(sqrt($3**2+$4**2)) with lines title '|S-|'\n"
     << "unset multiplot\n";
  ctx.text("fig2.gp", gp.str());
}

void fig3(Context& ctx) {
  const auto p = ctx.params(fig3_params());
  run_phase_diagram(ctx, p, PhaseDiagramOptions{});
  std::ostringstream gp;
  gp << script_header("fig3.png", 1, 1)
     << "set logscale xy\nset logscale cb\nset xlabel 'gamma/2pi (Hz)'\nset ylabel 'Gamma/2pi (Hz)'\n"
     << "plot 'grid.csv' using 1:2:3 with points pt 5 ps 2 palette notitle, "
     << "'boundary.csv' using 2:1 with lines lw 2 lc rgb 'red' title 'threshold'\n";
  ctx.text("fig3.gp", gp.str());
}

void fig4(Context& ctx) {
  const auto base = ctx.params(fig4_params());
  const double scale = base.kappa / (base.g * base.g);
  const std::vector<double> xs =
      ctx.paper() ? log_space(0.55, 100.0, 20)
                  : std::vector<double>{0.6, 0.75, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0, 20.0, 50.0};
  const double corr_times = ctx.paper() ? 1000.0 : 200.0;

  auto mc_csv = ctx.csv("fig4_mc.csv", "srlaser.fig4_mc.v1", base,
                        {"x", "domega_kappa_over_g2", "std", "n", "events"},
                        {{"realizations", "50"}});
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mc::McConfig cfg;
    cfg.params = base;
    cfg.params.Gamma = base.N * gamma_r_for_x(base, xs[k]);
    cfg.seed = ctx.seed() + (static_cast<std::uint64_t>(k) << 32);
    cfg.realizations = 50;
    cfg.events = sweep::mc_events(cfg.params, corr_times);
    const auto res = mc::run_ensemble(cfg, ctx.threads());
    ctx.add_seed(cfg.seed);
    mc_csv->row(std::vector<io::Cell>{xs[k], res.domega.mean * scale, res.domega.std * scale,
                 static_cast<std::int64_t>(res.domega.n), static_cast<std::int64_t>(cfg.events)});
  }
  mc_csv->close();

  auto theory = ctx.csv("fig4_theory.csv", "srlaser.fig4_theory.v1", base,
                        {"x", "mean_field", "mean_field_large_n", "cumulant"});
  for (double x : log_space(0.505, 100.0, 200)) {
    PhysParams p = base;
    p.Gamma = base.N * gamma_r_for_x(base, x);
    theory->row(std::vector<double>{
        x, or_nan([&] { return linewidth_mf(p).domega * scale; }),
        or_nan([&] { return linewidth_mf(p).domega_large_n * scale; }),
        or_nan([&] { return linewidth_cumulant(p).domega * scale; })});
  }
  theory->close();
  std::ostringstream gp;
  gp << script_header("fig4.png", 1, 1)
     << "set logscale xy\nset xlabel 'N^2 C'''\nset ylabel 'domega kappa / g^2'\n"
     << "plot 'fig4_mc.csv' using 1:2:3 with yerrorbars pt 7 lc rgb 'red' title 'Monte-Carlo', "
     << "'fig4_theory.csv' using 1:2 with lines lc rgb 'black' title 'mean field', "
     << "'' using 1:4 with lines lc rgb 'red' title 'cumulant'\n";
  ctx.text("fig4.gp", gp.str());
}

void fig5(Context& ctx) {
  const auto p = ctx.params(fig5_params());
  CumulantOptions macro;
  macro.duration_relax = 10.0;
  run_cumulant(ctx, p, macro, "macro_");
  CumulantOptions small = macro;
  small.sm0 = 0.01;
  small.sz0 = std::sqrt(0.25 - small.sm0 * small.sm0);
  run_cumulant(ctx, p, small, "small_");
  std::ostringstream gp;
  gp << script_header("fig5.png", 2, 2) << "set xlabel 't (s)'\n";
  for (const char* pre : {"macro_", "small_"}) {
    gp << "plot '" << pre << "cumulant.csv' using 1:26 with lines lc rgb 'red' title 'cumulant', '"
       << pre << "meanfield.csv' using 1:2 with lines dt 2 lc rgb 'black' title 'mean field'\n"
       << "plot '" << pre << "cumulant.csv' using 1:27 with lines lc rgb 'red' title '<Sx^2+Sy^2>', '"
       << pre << "meanfield.csv' using 1:($3**2+$4**2) with lines dt 2 lc rgb 'black' title '|S+|^2'\n";
  }
  gp << "unset multiplot\n";
  ctx.text("fig5.gp", gp.str());
}

void fig6(Context& ctx) {
  const auto base = ctx.params(fig5_params());
  auto csv = ctx.csv("fig6.csv", "srlaser.fig6.v1", base,
                     {"N", "sigma", "sigma_large_n", "sigma_times_N"});
  for (double N : log_space(10.0, 1e7, 121)) {
    PhysParams p = base;
    p.N = N;
    p.Gamma = N * base.gamma_r();
    const auto c = cumulant_closed_form(p);
    const double s = c.below_threshold ? kNaN : c.sigma;
    csv->row(std::vector<double>{N, s, sigma_large_n(p), s * N});
  }
  csv->close();
  std::ostringstream gp;
  gp << script_header("fig6.png", 1, 1)
     << "set logscale x\nset xlabel 'N'\nset ylabel 'sigma'\n"
     << "plot 'fig6.csv' using 1:2 with lines lc rgb 'red', '' using 1:3 with lines dt 2 lc rgb 'black'\n";
  ctx.text("fig6.gp", gp.str());
}

void fig7(Context& ctx) {
  io::ParamsHz defaults = fig5_params();
  const auto base = ctx.params(defaults);
  std::vector<double> Ns = {500.0, 2e4};
  if (ctx.N_override()) Ns = {*ctx.N_override()};

  std::ostringstream gp;
  gp << script_header("fig7.png", 1, 3) << "set logscale x\nset xlabel 'Gamma_R/2pi (Hz)'\n";
  std::vector<std::string> files;
  for (double N : Ns) {
    std::ostringstream name;
    name << "fig7_N" << static_cast<long long>(std::llround(N)) << ".csv";
    files.push_back(name.str());
    PhysParams pn = base;
    pn.N = N;
    auto csv = ctx.csv(name.str(), "srlaser.fig7.v1", pn,
                       {"gammaR_hz", "x", "domega_hz", "domega_mf_hz", "purcell_limit_hz",
                        "gammaR_limit_hz", "L", "L_independent", "flux_per_atom",
                        "flux_limit", "below_threshold"});
    for (double gr : log_space(10.0, 1e7, 121)) {
      PhysParams p = pn;
      p.Gamma = N * hz_to_angular(gr);
      const auto c = cumulant_closed_form(p);
      const auto w = linewidth_cumulant(p);
      csv->row(std::vector<double>{
          gr, p.collective_loading_parameter(), angular_to_hz(w.domega),
          or_nan([&] { return angular_to_hz(linewidth_mf(p).domega); }),
          angular_to_hz(domega_min(p)), gr, std::sqrt(std::max(w.L_sq, 0.0)),
          std::sqrt(0.5 * N), p.kappa * c.bdb / p.Gamma, 0.5,
          c.below_threshold ? 1.0 : 0.0});
    }
    csv->close();
  }
  for (const auto& [col, label] : std::vector<std::pair<int, const char*>>{
           {3, "domega/2pi (Hz)"}, {7, "L"}, {9, "R / Gamma"}}) {
    gp << "set ylabel '" << label << "'\n" << (col != 9 ? "set logscale y\n" : "unset logscale y\n")
       << "plot ";
    for (std::size_t i = 0; i < files.size(); ++i)
      gp << (i ? ", " : "") << "'" << files[i] << "' using 1:" << col << " with lines";
    gp << "\n";
  }
  gp << "unset multiplot\n";
  ctx.text("fig7.gp", gp.str());
}

}  // namespace

void run_figure(Context& ctx, const std::string& which) {
  if (which == "fig1") fig1(ctx);
  else if (which == "fig2") fig2(ctx);
  else if (which == "fig3") fig3(ctx);
  else if (which == "fig4") fig4(ctx);
  else if (which == "fig5") fig5(ctx);
  else if (which == "fig6") fig6(ctx);
  else if (which == "fig7") fig7(ctx);
  else throw ValidationError("figure", "unknown figure '" + which + "' (fig1 to fig7)");
}

}  // namespace srl::cli
