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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "srlaser/analytics.hpp"
#include "srlaser/cumulant.hpp"
#include "srlaser/montecarlo.hpp"
#include "srlaser/spectrum.hpp"
#include "srlaser/sweep.hpp"

namespace srl::cli {

io::ParamsHz fig1_params() {
  io::ParamsHz p;
  p.g_hz = 4e3;
  p.kappa_hz = 2e5;
  p.gamma_hz = 0.0;
  p.N = 1e3;
  return p;
}

io::ParamsHz fig2_params(Preset preset) {
  io::ParamsHz p;
  p.g_hz = 3e3;
  p.kappa_hz = 1e6;
  p.gamma_hz = 7e3;
  p.gammaR_hz = 5e5 / kTwoPi;
  p.N = preset == Preset::kPaper ? 1e5 : 1e4;
  return p;
}

io::ParamsHz fig3_params() {
  io::ParamsHz p;
  p.g_hz = 200.0;
  p.kappa_hz = 1e5;
  p.gamma_hz = 0.0;
  p.N = 100.0;
  return p;
}

io::ParamsHz fig4_params() {
  io::ParamsHz p;
  p.g_hz = 300.0;
  p.kappa_hz = 1e5;
  p.gamma_hz = 0.0;
  p.N = 100.0;
  return p;
}

io::ParamsHz fig5_params() {
  io::ParamsHz p;
  p.g_hz = 3e3;
  p.kappa_hz = 1e6;
  p.gamma_hz = 0.0;
  p.gammaR_hz = 2e5;
  p.N = 2e4;
  return p;
}

double gamma_r_for_x(const PhysParams& p, double x) {
  if (!(x > 0.0)) throw ValidationError("x", "N^2 C' must be positive");
  return p.collective_rate() / x;
}

namespace {

const std::vector<std::string> kSpectrumColumns = {"omega_over_2pi_hz",
                                                   "intensity_normalized"};

void write_trajectory(Context& ctx, const std::string& name, const PhysParams& p,
                      const mf::MfTrajectory& tr, mf::Variant v) {
  auto csv = ctx.csv(name, "srlaser.trajectory.v1", p,
                     {"t_s", "Sz", "ReSm", "ImSm", "Reb", "Imb"},
                     {{"variant", std::string(mf::to_string(v))}});
  for (std::size_t i = 0; i < tr.size(); ++i)
    csv->row(std::vector<double>{tr.t[i], tr.Sz[i], tr.Sm[i].real(), tr.Sm[i].imag(),
                                 tr.b[i].real(), tr.b[i].imag()});
  csv->close();
}

/// Normalized spectrum on a grid wide enough to show the line, and its HWHM.
std::pair<spectrum::Spectrum, double> line_spectrum(const spectrum::FieldRecord& r,
                                                    std::size_t points = 4001,
                                                    double span_hwhm = 10.0) {
  const double h = spectrum::measure_linewidth(r);
  const double nyquist = std::numbers::pi / r.dt;
  const double half = std::min(std::max(span_hwhm * h, 40.0 / r.duration()), nyquist);
  auto s = spectrum::compute_spectrum(r, spectrum::linear_grid(0.0, half, points | 1));
  const double top = *std::max_element(s.intensity.begin(), s.intensity.end());
  if (top > 0.0)
    for (auto& v : s.intensity) v /= top;
  return {std::move(s), h};
}

void write_spectrum(Context& ctx, const std::string& name, const PhysParams& p,
                    const spectrum::Spectrum& s, double hwhm, io::Metadata extra = {}) {
  extra.emplace_back("hwhm_hz", io::format_double(angular_to_hz(hwhm)));
  auto csv = ctx.csv(name, "srlaser.spectrum.v1", p, kSpectrumColumns, extra);
  for (std::size_t i = 0; i < s.omega.size(); ++i)
    csv->row(std::vector<double>{angular_to_hz(s.omega[i]), s.intensity[i]});
  csv->close();
}

std::string time_label(double t) {
  std::ostringstream os;
  os << std::round(t * 1e9) << "ns";
  return os.str();
}

}  // namespace

PulsedOutputs run_pulsed(Context& ctx, const PhysParams& p, const PulsedOptions& o) {
  if (!(o.duration > 0.0)) throw ValidationError("duration", "must be positive");
  if (o.samples < spectrum::kMinRecordLength)
    throw ValidationError("samples", "need at least 16 samples");
  auto spec = mf::ScenarioSpec::pulsed_default(p, o.duration);
  spec.sample_interval = o.duration / static_cast<double>(o.samples - 1);
  const auto tr = mf::run_scenario(spec, p);

  PulsedOutputs out;
  out.trajectory = "trajectory.csv";
  write_trajectory(ctx, out.trajectory, p, tr, spec.variant);
  if (!o.spectrum) return out;

  for (double te : o.spectrum_times) {
    if (!(te > 0.0) || te > o.duration)
      throw ValidationError("spectrum-times", "times must lie in (0, duration]");
    const auto [s, h] = line_spectrum(spectrum::from_trajectory(tr, te));
    const std::string name = "spectrum_t" + time_label(te) + ".csv";
    write_spectrum(ctx, name, p, s, h, {{"t_end_s", io::format_double(te)}});
    out.spectra.push_back(name);
  }

  out.linewidth = "linewidth_vs_time.csv";
  auto csv = ctx.csv(out.linewidth, "srlaser.linewidth_vs_time.v1", p,
                     {"t_s", "hwhm_hz", "collective_rate_hz"});
  for (std::size_t k = 1; k <= o.width_points; ++k) {
    const double te = o.duration * static_cast<double>(k) / static_cast<double>(o.width_points);
    double h = std::numeric_limits<double>::quiet_NaN();
    try {
      h = spectrum::measure_linewidth(spectrum::from_trajectory(tr, te));
    } catch (const ValidationError&) {
      // record too short at this time
    }
    csv->row(std::vector<double>{te, angular_to_hz(h), angular_to_hz(p.collective_rate())});
  }
  csv->close();
  return out;
}

ContinuousOutputs run_continuous(Context& ctx, const PhysParams& p,
                                 const ContinuousOptions& o, const std::string& prefix) {
  if (!(o.duration_relax > 0.0)) throw ValidationError("duration", "must be positive");
  if (!(p.Gamma > 0.0)) throw ValidationError("Gamma", "continuous runs need a loading rate");
  if (o.samples < spectrum::kMinRecordLength)
    throw ValidationError("samples", "need at least 16 samples");
  mf::ScenarioSpec spec;
  spec.variant = mf::parse_variant(o.variant);
  if (spec.variant == mf::Variant::kPulsed)
    throw ValidationError("variant", "use the pulsed command for pulsed dynamics");
  spec.Sz0 = o.Sz0_fraction.value_or(0.5) * p.N;
  spec.Sm0 = Complex(o.seed_fraction * p.N, 0.0);
  spec.duration = o.duration_relax / p.gamma_r();
  spec.sample_interval = spec.duration / static_cast<double>(o.samples - 1);
  const auto tr = mf::run_scenario(spec, p);

  ContinuousOutputs out;
  out.trajectory = prefix + "trajectory.csv";
  write_trajectory(ctx, out.trajectory, p, tr, spec.variant);
  if (!o.spectrum) return out;

  // Steady part of the record: second half of the run.
  const std::size_t n = tr.size();
  const std::size_t first = n / 2;
  const auto record = spectrum::FieldRecord::from_samples(
      std::span(tr.t).subspan(first), std::span(tr.b).subspan(first));
  const auto [s, h] = line_spectrum(record);
  out.spectrum = prefix + "spectrum.csv";
  write_spectrum(ctx, out.spectrum, p, s, h,
                 {{"t_start_s", io::format_double(tr.t[first])},
                  {"t_end_s", io::format_double(tr.t.back())}});
  return out;
}

namespace {

sweep::Axis parse_axis(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 5)
    throw ValidationError("axis", "expected name:scale:min:max:count, got '" + text + "'");
  sweep::Axis a;
  a.name = parts[0];
  a.scale = sweep::parse_scale(parts[1]);
  a.min = io::parse_double(parts[2], "axis min");
  a.max = io::parse_double(parts[3], "axis max");
  const double count = io::parse_double(parts[4], "axis count");
  if (!(count >= 2.0) || count != std::floor(count))
    throw ValidationError("axis", "count must be an integer >= 2");
  a.count = static_cast<std::size_t>(count);
  return a;
}

}  // namespace

void run_phase_diagram(Context& ctx, const PhysParams& p, const PhaseDiagramOptions& o) {
  sweep::SweepSpec spec;
  spec.fixed = p;
  spec.task = sweep::Task::kSpectrumLinewidth;
  spec.spectrum.relax_periods = o.relax_periods;
  spec.spectrum.min_duration = o.min_duration;
  spec.spectrum.samples = o.samples;
  if (o.axes.empty()) {
    const std::size_t n = ctx.paper() ? 30 : 20;
    spec.axes = {{"gamma_hz", sweep::Scale::kLog, 0.01, 100.0, n},
                 {"Gamma_hz", sweep::Scale::kLog, 10.0, 1e4, n}};
  } else {
    for (const auto& a : o.axes) spec.axes.push_back(parse_axis(a));
  }
  if (spec.axes.size() != 2)
    throw ValidationError("axis", "phase diagram needs exactly two axes");

  const auto pd = sweep::run_phase_diagram(spec, ctx.threads());
  const bool gamma_first = spec.axes[0].name == "gamma_hz";
  auto grid = ctx.csv("grid.csv", "srlaser.phase_grid.v1", p,
                      {"gamma_hz", "Gamma_hz", "domega_hz", "branch", "error"});
  for (const auto& pt : pd.grid.points) {
    const double g = gamma_first ? pt.coords[0] : pt.coords[1];
    const double G = gamma_first ? pt.coords[1] : pt.coords[0];
    grid->row(std::vector<io::Cell>{g, G, angular_to_hz(pt.domega), std::string(pt.superradiant ? "A" : "B"),
               pt.error});
  }
  grid->close();
  auto boundary = ctx.csv("boundary.csv", "srlaser.phase_boundary.v1", p,
                          {"Gamma_hz", "gamma_crit_hz"});
  for (const auto& b : pd.boundary) boundary->row(std::vector<double>{b.Gamma_hz, b.gamma_crit_hz});
  boundary->close();
  if (!pd.warning.empty()) ctx.warn(pd.warning);
  std::size_t failed = 0;
  for (const auto& pt : pd.grid.points) failed += pt.error.empty() ? 0 : 1;
  if (failed) ctx.warn(std::to_string(failed) + " grid points failed; see the error column");
}

void run_mc(Context& ctx, PhysParams p, const McOptions& o) {
  if (o.x) p.Gamma = p.N * gamma_r_for_x(p, *o.x);
  mc::McConfig cfg;
  cfg.params = p;
  cfg.seed = ctx.seed();
  cfg.realizations = o.realizations;
  cfg.burn_in = o.burn_in;
  cfg.events = o.events ? o.events
                        : sweep::mc_events(p, o.correlation_times.value_or(ctx.paper() ? 1000.0 : 200.0));
  const auto res = mc::run_ensemble(cfg, ctx.threads());
  ctx.add_seed(cfg.seed);

  const io::Metadata meta = {{"events", std::to_string(cfg.events)},
                             {"burn_in_s", io::format_double(cfg.burn_in_time())},
                             {"realizations", std::to_string(cfg.realizations)},
                             {"x", io::format_double(p.collective_loading_parameter())}};
  auto per = ctx.csv("realizations.csv", "srlaser.mc_realizations.v1", p,
                     {"index", "seed", "tau_c_s", "domega_hz", "tau_err_s", "lower_bound",
                      "mean_Sz", "domega_first_half_hz", "domega_second_half_hz", "excursions"},
                     meta);
  for (const auto& r : res.realizations)
    per->row(std::vector<io::Cell>{static_cast<std::int64_t>(r.index), std::to_string(r.seed),
              r.fit.tau_c, angular_to_hz(r.fit.domega), r.fit.tau_err,
              static_cast<std::int64_t>(r.fit.lower_bound), r.mean_Sz,
              angular_to_hz(r.domega_first_half), angular_to_hz(r.domega_second_half),
              static_cast<std::int64_t>(r.excursions)});
  per->close();

  io::Metadata agg_meta = meta;
  agg_meta.emplace_back("single_sample", res.domega.single_sample ? "true" : "false");
  auto agg = ctx.csv("aggregate.csv", "srlaser.mc_aggregate.v1", p,
                     {"quantity", "mean", "std", "n"}, agg_meta);
  auto put = [&](const char* name, const mc::Aggregate& a, double scale) {
    agg->row(std::vector<io::Cell>{std::string(name), a.mean * scale, a.std * scale, static_cast<std::int64_t>(a.n)});
  };
  const double hz = 1.0 / kTwoPi;
  put("domega_hz", res.domega, hz);
  put("domega_first_half_hz", res.domega_first_half, hz);
  put("domega_second_half_hz", res.domega_second_half, hz);
  put("mean_Sz", res.mean_Sz, 1.0);
  put("mean_perp_sq", res.mean_perp_sq, 1.0);
  agg->close();
  if (res.domega.single_sample) ctx.warn("one realization: aggregate std is 0");

  std::cout << "domega/2pi = " << io::format_double(res.domega.mean * hz) << " Hz, std "
            << io::format_double(res.domega.std * hz) << " Hz over " << res.domega.n
            << " realizations\n";
}

void run_cumulant(Context& ctx, const PhysParams& p, const CumulantOptions& o,
                  const std::string& prefix) {
  if (!(o.duration_relax > 0.0)) throw ValidationError("duration", "must be positive");
  if (o.sz0 * o.sz0 + o.sm0 * o.sm0 > 0.25 + 1e-12)
    throw ValidationError("sm0", "initial Bloch vector must satisfy sz0^2 + |sm0|^2 <= 1/4");
  const double duration = o.duration_relax / p.gamma_r();
  auto policy = cumulant::default_policy(p);
  policy.sample_interval = duration / static_cast<double>(o.samples - 1);
  const auto tr = cumulant::run_cumulant(cumulant::CumulantState::uncorrelated(o.sz0, o.sm0),
                                         p, duration, policy);

  std::vector<std::string> cols = {"t_s"};
  for (const char* n : {"sm", "sz", "b", "bdb", "b2", "szb", "bdsm", "bsm", "spsm", "spsp",
                        "szsm", "szsz"}) {
    cols.push_back(std::string("Re_") + n);
    cols.push_back(std::string("Im_") + n);
  }
  for (const char* n : {"Sz", "dipole_sq", "Nnu", "sigma"}) cols.emplace_back(n);
  auto csv = ctx.csv(prefix + "cumulant.csv", "srlaser.cumulant_trajectory.v1", p, cols);
  for (std::size_t i = 0; i < tr.size(); ++i) {
    std::vector<double> row = {tr.t[i]};
    for (const auto& c : tr.state[i].to_array()) {
      row.push_back(c.real());
      row.push_back(c.imag());
    }
    const auto& d = tr.derived[i];
    row.insert(row.end(), {d.Sz_coll, d.dipole_sq, d.Nnu, d.sigma});
    csv->row(row);
  }
  csv->close();

  auto steady = ctx.csv(prefix + "steady.csv", "srlaser.steady.v1", p, {"quantity", "value"});
  const auto c = cumulant_closed_form(p);
  const auto mf = mf_steady_state(p);
  steady->row(std::vector<io::Cell>{std::string("Sz_cumulant"), p.N * c.sz});
  steady->row(std::vector<io::Cell>{std::string("dipole_sq_cumulant"), 0.5 * p.N + p.N * (p.N - 1.0) * c.sigma});
  steady->row(std::vector<io::Cell>{std::string("sigma"), c.sigma});
  steady->row(std::vector<io::Cell>{std::string("Nnu"), c.bdb});
  steady->row(std::vector<io::Cell>{std::string("Sz_mf"), mf.Sz_active()});
  steady->row(std::vector<io::Cell>{std::string("Splus_sq_mf"), mf.Splus_sq_active()});
  steady->close();

  if (o.mean_field) {
    mf::ScenarioSpec spec;
    spec.variant = mf::Variant::kContinuous;
    spec.Sz0 = p.N * o.sz0;
    spec.Sm0 = Complex(p.N * o.sm0, 0.0);
    spec.duration = duration;
    spec.sample_interval = policy.sample_interval;
    write_trajectory(ctx, prefix + "meanfield.csv", p, mf::run_scenario(spec, p), spec.variant);
  }
}

namespace {

PhysParams params_from_comments(const io::CsvTable& t) {
  for (const auto& c : t.comments) {
    const auto pos = c.find("params:");
    if (pos == std::string::npos) continue;
    const auto j = nlohmann::json::parse(c.substr(pos + 7));
    io::ParamsHz h;
    h.g_hz = j.at("g_hz").get<double>();
    h.kappa_hz = j.at("kappa_hz").get<double>();
    h.gamma_hz = j.at("gamma_hz").get<double>();
    h.Gamma_hz = j.at("Gamma_hz").get<double>();
    h.N = j.at("N").get<double>();
    return h.resolve();
  }
  return PhysParams{};
}

}  // namespace

void run_spectrum(Context& ctx, const SpectrumOptions& o) {
  if (o.input.empty()) throw ValidationError("input", "a trajectory CSV is required");
  const auto table = io::read_csv(o.input);
  const auto it = table.column("t_s"), ir = table.column("Reb"), ii = table.column("Imb");
  std::vector<double> t;
  std::vector<Complex> b;
  for (const auto& row : table.rows) {
    if (o.t_end && row[it] > *o.t_end * (1.0 + 1e-12)) break;
    t.push_back(row[it]);
    b.emplace_back(row[ir], row[ii]);
  }
  const auto record = spectrum::FieldRecord::from_samples(t, b);
  const auto [s, h] = line_spectrum(record, o.points, o.span_hwhm);
  write_spectrum(ctx, "spectrum.csv", params_from_comments(table), s, h,
                 {{"source", std::filesystem::path(o.input).filename().string()}});
  std::cout << "hwhm/2pi = " << io::format_double(angular_to_hz(h)) << " Hz\n";
}

}  // namespace srl::cli
