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

#include "srlaser/sweep.hpp"

#include <cmath>
#include <limits>

#include "srlaser/analytics.hpp"
#include "srlaser/meanfield.hpp"
#include "srlaser/montecarlo.hpp"
#include "srlaser/parallel.hpp"
#include "srlaser/spectrum.hpp"

namespace srl::sweep {

std::vector<double> Axis::values() const {
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double f = count > 1 ? static_cast<double>(i) / static_cast<double>(count - 1) : 0.0;
    v[i] = scale == Scale::kLog ? min * std::pow(max / min, f) : min + (max - min) * f;
  }
  if (count > 1) v.back() = max;
  return v;
}

std::string_view to_string(Task t) {
  switch (t) {
    case Task::kMfSteady: return "mf-steady";
    case Task::kCumulantSteady: return "cumulant-steady";
    case Task::kMcLinewidth: return "mc-linewidth";
    case Task::kSpectrumLinewidth: return "spectrum-linewidth";
  }
  return "unknown";
}

Task parse_task(std::string_view name) {
  for (Task t : {Task::kMfSteady, Task::kCumulantSteady, Task::kMcLinewidth,
                 Task::kSpectrumLinewidth})
    if (name == to_string(t)) return t;
  throw ValidationError("task", "unknown sweep task '" + std::string(name) + "'");
}

Scale parse_scale(std::string_view name) {
  if (name == "linear") return Scale::kLinear;
  if (name == "log") return Scale::kLog;
  throw ValidationError("scale", "expected linear or log, got '" + std::string(name) + "'");
}

void check(const SweepSpec& spec) {
  if (spec.axes.empty() || spec.axes.size() > 2)
    throw ValidationError("axes", "a sweep has one or two axes");
  for (const auto& a : spec.axes) {
    PhysParams probe = spec.fixed;
    apply(probe, a.name, a.min);
    if (a.count < 2) throw ValidationError(a.name, "axis needs at least 2 points");
    if (!std::isfinite(a.min) || !std::isfinite(a.max) || !(a.max > a.min))
      throw ValidationError(a.name, "axis needs finite min < max");
    if (a.scale == Scale::kLog && !(a.min > 0.0))
      throw ValidationError(a.name, "log axis needs min > 0");
  }
  if (spec.axes.size() == 2 && spec.axes[0].name == spec.axes[1].name)
    throw ValidationError("axes", "both axes sweep " + spec.axes[0].name);
  if (spec.spectrum.samples < spectrum::kMinRecordLength)
    throw ValidationError("samples", "spectrum record too short");
  if (spec.mc.realizations < 1)
    throw ValidationError("realizations", "must be at least 1");
}

void apply(PhysParams& p, std::string_view name, double value) {
  if (name == "g_hz") p.g = hz_to_angular(value);
  else if (name == "kappa_hz") p.kappa = hz_to_angular(value);
  else if (name == "gamma_hz") p.gamma = hz_to_angular(value);
  else if (name == "Gamma_hz") p.Gamma = hz_to_angular(value);
  else if (name == "gammaR_hz") p.Gamma = p.N * hz_to_angular(value);
  else if (name == "N") {
    const double gr = p.gamma_r();
    p.N = value;
    p.Gamma = gr * value;  // keeps the refreshing rate
  } else {
    throw ValidationError(std::string(name), "not a sweepable parameter");
  }
}

std::uint64_t mc_events(const PhysParams& p, double correlation_times) {
  mc::McConfig cfg;
  cfg.params = p;
  const double unit = p.kappa / (2.0 * p.g * p.g);
  const double analysed = std::ceil(correlation_times * unit * p.Gamma);
  const double total = static_cast<double>(cfg.burn_in_events()) + analysed;
  return static_cast<std::uint64_t>(std::max(total, std::ceil(10.0 * p.N)));
}

double spectrum_linewidth(const PhysParams& p, const SpectrumRunOptions& opt) {
  mf::ScenarioSpec s;
  s.variant = mf::Variant::kContinuousSpont;
  s.Sz0 = 0.5 * p.N;
  s.Sm0 = Complex(opt.seed_fraction * p.N, 0.0);
  s.duration = std::max(opt.relax_periods / p.gamma_r(), opt.min_duration);
  s.sample_interval = s.duration / static_cast<double>(opt.samples - 1);
  const auto traj = mf::run_scenario(s, p);
  return spectrum::measure_linewidth(spectrum::from_trajectory(traj));
}

namespace {

double evaluate(const SweepSpec& spec, const PhysParams& p, std::size_t index) {
  switch (spec.task) {
    case Task::kMfSteady:
      return linewidth_mf(p).domega;
    case Task::kCumulantSteady:
      return linewidth_cumulant(p).domega;
    case Task::kSpectrumLinewidth:
      return spectrum_linewidth(p, spec.spectrum);
    case Task::kMcLinewidth: {
      mc::McConfig cfg;
      cfg.params = p;
      cfg.seed = spec.mc.seed + 0x9e3779b97f4a7c15ULL * index;
      cfg.events = mc_events(p, spec.mc.correlation_times);
      cfg.realizations = spec.mc.realizations;
      return mc::run_ensemble(cfg, 1).domega.mean;
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, unsigned threads) {
  check(spec);
  const auto first = spec.axes[0].values();
  const std::vector<double> second =
      spec.axes.size() > 1 ? spec.axes[1].values() : std::vector<double>{0.0};

  SweepResult out;
  out.points.resize(first.size() * second.size());
  for (std::size_t j = 0; j < second.size(); ++j) {
    for (std::size_t i = 0; i < first.size(); ++i) {
      Point& pt = out.points[j * first.size() + i];
      pt.params = spec.fixed;
      pt.coords.push_back(first[i]);
      apply(pt.params, spec.axes[0].name, first[i]);
      if (spec.axes.size() > 1) {
        pt.coords.push_back(second[j]);
        apply(pt.params, spec.axes[1].name, second[j]);
      }
    }
  }

  parallel_for(out.points.size(), threads, [&](std::size_t k) {
    Point& pt = out.points[k];
    try {
      check(pt.params);
      pt.superradiant = mf_steady_state(pt.params).superradiant;
      pt.domega = evaluate(spec, pt.params, k);
    } catch (const std::exception& e) {
      pt.domega = std::numeric_limits<double>::quiet_NaN();
      pt.error = e.what();
    }
  });
  return out;
}

PhaseDiagram run_phase_diagram(const SweepSpec& spec, unsigned threads) {
  if (spec.axes.size() != 2)
    throw ValidationError("axes", "phase diagram needs two axes, gamma_hz and Gamma_hz");
  std::size_t iG = 0;
  if (spec.axes[0].name == "Gamma_hz" && spec.axes[1].name == "gamma_hz") iG = 0;
  else if (spec.axes[0].name == "gamma_hz" && spec.axes[1].name == "Gamma_hz") iG = 1;
  else throw ValidationError("axes", "phase diagram needs axes gamma_hz and Gamma_hz");

  PhaseDiagram out;
  out.grid = run_sweep(spec, threads);
  for (double G : spec.axes[iG].values()) {
    PhysParams p = spec.fixed;
    apply(p, "Gamma_hz", G);
    p.gamma = 0.0;
    if (!(p.collective_loading_parameter() > 0.5)) continue;
    out.boundary.push_back({G, angular_to_hz(threshold_boundary(p).gamma_crit)});
  }
  if (out.boundary.empty())
    out.warning = "no grid column is above the collective threshold N^2 C' > 1/2";
  return out;
}

}  // namespace srl::sweep
