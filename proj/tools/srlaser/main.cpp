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

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "context.hpp"
#include "srlaser/io/manifest.hpp"

namespace srl::cli {
namespace {

enum ExitCode { kOk = 0, kFailure = 1, kUsage = 2, kNumeric = 3 };

std::vector<std::string> rerun_argv(const std::vector<std::string>& original,
                                    const std::string& config, const std::string& out) {
  std::vector<std::string> argv;
  for (std::size_t i = 0; i < original.size(); ++i) {
    const std::string& a = original[i];
    if (a == "--config" || a == "--out") {
      ++i;
      continue;
    }
    if (a.rfind("--config=", 0) == 0 || a.rfind("--out=", 0) == 0) continue;
    argv.push_back(a);
  }
  argv.insert(argv.end(), {"--config", config, "--out", out});
  return argv;
}

int run(std::vector<std::string> args);

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"Simulator for a continuously loaded superradiant laser", "srlaser"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--config", g.config, "Parameter file (key = value)");
  app.add_option("--out", g.out, "Output directory")->capture_default_str();
  app.add_option("--seed", g.seed, "Base seed")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads, 0 for all")->capture_default_str();
  app.add_option("--preset", g.preset, "desk or paper")
      ->check(CLI::IsMember({"desk", "paper"}))
      ->capture_default_str();
  auto param = [&](const char* flag, std::optional<double>& field, const char* help) {
    app.add_option_function<double>(flag, [&field](double v) { field = v; }, help);
  };
  param("--g-hz", g.overrides.g_hz, "Coupling g/2pi");
  param("--kappa-hz", g.overrides.kappa_hz, "Cavity leakage kappa/2pi");
  param("--gamma-hz", g.overrides.gamma_hz, "Spontaneous emission gamma/2pi");
  param("--Gamma-hz", g.overrides.Gamma_hz, "Loading rate Gamma/2pi");
  param("--gammaR-hz", g.overrides.gammaR_hz, "Refreshing rate Gamma_R/2pi");
  param("--N", g.overrides.N, "Atom number");

  std::string command;
  std::function<void(Context&)> action;

  auto* pulsed = app.add_subcommand("pulsed", "Pulsed superradiant burst");
  PulsedOptions po;
  pulsed->add_option("--duration", po.duration, "Run time in seconds")->capture_default_str();
  pulsed->add_option("--samples", po.samples, "Trajectory samples")->capture_default_str();
  pulsed->add_flag("!--no-spectrum", po.spectrum, "Write the trajectory only");
  pulsed->add_option("--spectrum-times", po.spectrum_times, "Spectrum record ends in seconds");
  pulsed->add_option("--width-points", po.width_points, "Points of the linewidth-vs-time curve");
  pulsed->callback([&] {
    action = [&](Context& ctx) { run_pulsed(ctx, ctx.params(fig1_params()), po); };
  });

  auto* cont = app.add_subcommand("continuous", "Continuously loaded laser");
  ContinuousOptions co;
  double Sz0 = 0.5;
  cont->add_option("--variant", co.variant, "continuous, continuous_spont or nonadiabatic")
      ->capture_default_str();
  cont->add_option("--duration", co.duration_relax, "Run time in units of 1/Gamma_R")
      ->capture_default_str();
  cont->add_option("--seed-dipole", co.seed_fraction, "Initial |Sm| / N")->capture_default_str();
  cont->add_option("--Sz0", Sz0, "Initial Sz / N")->capture_default_str();
  cont->add_option("--samples", co.samples, "Trajectory samples")->capture_default_str();
  cont->add_flag("!--no-spectrum", co.spectrum, "Write the trajectory only");
  cont->callback([&] {
    co.Sz0_fraction = Sz0;
    action = [&](Context& ctx) { run_continuous(ctx, ctx.params(fig2_params(ctx.preset())), co); };
  });

  auto* phase = app.add_subcommand("phase-diagram", "Linewidth over (gamma, Gamma)");
  PhaseDiagramOptions pdo;
  phase->add_option("--axis", pdo.axes, "name:scale:min:max:count, twice");
  phase->add_option("--relax", pdo.relax_periods, "Minimum run time in units of 1/Gamma_R")
      ->capture_default_str();
  phase->add_option("--min-duration", pdo.min_duration, "Minimum run time in seconds")
      ->capture_default_str();
  phase->add_option("--samples", pdo.samples, "Field samples per point")->capture_default_str();
  phase->callback([&] {
    action = [&](Context& ctx) { run_phase_diagram(ctx, ctx.params(fig3_params()), pdo); };
  });

  auto* mcc = app.add_subcommand("mc", "Monte-Carlo linewidth ensemble");
  McOptions mo;
  mcc->add_option_function<double>("--x", [&](double v) { mo.x = v; },
                                   "Set Gamma_R from N^2 C'");
  mcc->add_option("--realizations", mo.realizations)->capture_default_str();
  mcc->add_option("--events", mo.events, "Loading events per realization, 0 for auto")
      ->capture_default_str();
  mcc->add_option_function<double>("--correlation-times",
                                   [&](double v) { mo.correlation_times = v; },
                                   "Analysed duration in units of kappa/(2 g^2)");
  mcc->add_option_function<double>("--burn-in", [&](double v) { mo.burn_in = v; },
                                   "Discarded time in seconds");
  mcc->callback([&] {
    action = [&](Context& ctx) {
      io::ParamsHz d = fig4_params();
      if (!mo.x) d.gammaR_hz = *d.N * *d.g_hz * *d.g_hz / (*d.kappa_hz * 10.0);
      run_mc(ctx, ctx.params(d), mo);
    };
  });

  auto* cum = app.add_subcommand("cumulant", "Second-order cumulant dynamics");
  CumulantOptions cuo;
  cum->add_option("--duration", cuo.duration_relax, "Run time in units of 1/Gamma_R")
      ->capture_default_str();
  cum->add_option("--sz0", cuo.sz0, "Initial single-atom <sz>")->capture_default_str();
  cum->add_option("--sm0", cuo.sm0, "Initial single-atom <s->")->capture_default_str();
  cum->add_option("--samples", cuo.samples)->capture_default_str();
  cum->add_flag("!--no-mean-field", cuo.mean_field, "Skip the mean-field overlay");
  cum->callback([&] {
    action = [&](Context& ctx) { run_cumulant(ctx, ctx.params(fig5_params()), cuo); };
  });

  auto* spec = app.add_subcommand("spectrum", "Spectrum of a recorded field");
  SpectrumOptions so;
  spec->add_option("--input", so.input, "Trajectory CSV with t_s, Reb, Imb")->required();
  spec->add_option_function<double>("--t-end", [&](double v) { so.t_end = v; },
                                    "Use samples up to this time");
  spec->add_option("--points", so.points)->capture_default_str();
  spec->add_option("--span", so.span_hwhm, "Half span in HWHM units")->capture_default_str();
  spec->callback([&] { action = [&](Context& ctx) { run_spectrum(ctx, so); }; });

  auto* figs = app.add_subcommand("figures", "Data and plot script for one figure");
  std::string which;
  figs->add_option("which", which, "fig1 to fig7")->required();
  figs->callback([&] { action = [&](Context& ctx) { run_figure(ctx, which); }; });

  auto* rerun = app.add_subcommand("rerun", "Repeat a run from its manifest");
  std::string manifest_path;
  rerun->add_option("--manifest", manifest_path, "manifest.json of the run")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (rerun->parsed()) {
    const auto m = io::RunManifest::read(manifest_path);
    const auto snapshot = std::filesystem::temp_directory_path() /
                          ("srlaser-config-" + std::to_string(std::hash<std::string>{}(g.out)) + ".txt");
    {
      std::ofstream f(snapshot, std::ios::binary);
      f << m.config_text;
    }
    std::vector<std::string> argv = rerun_argv(m.argv, snapshot.string(), g.out);
    const int code = run(argv);
    std::filesystem::remove(snapshot);
    return code;
  }

  for (auto* sub : app.get_subcommands()) command = sub->get_name();
  Context ctx(g, args, command);
  try {
    action(ctx);
    ctx.finish("ok");
    return kOk;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    ctx.finish(std::string("numeric failure: ") + e.what());
    return kNumeric;
  } catch (const StiffnessError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    ctx.finish(std::string("numeric failure: ") + e.what());
    return kNumeric;
  } catch (const TimeoutError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    ctx.finish(std::string("numeric failure: ") + e.what());
    return kNumeric;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    ctx.finish(std::string("error: ") + e.what());
    return kUsage;
  }
}

int run(std::vector<std::string> args) {
  try {
    return dispatch(args);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace
}  // namespace srl::cli

int main(int argc, char** argv) {
  return srl::cli::run(std::vector<std::string>(argv, argv + argc));
}
