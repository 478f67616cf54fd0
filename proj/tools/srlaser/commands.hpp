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
#include <string>
#include <vector>

#include "context.hpp"
#include "srlaser/io/config.hpp"
#include "srlaser/meanfield.hpp"

namespace srl::cli {

// Figure parameters, from the captions.
io::ParamsHz fig1_params();
io::ParamsHz fig2_params(Preset preset);
io::ParamsHz fig3_params();
io::ParamsHz fig4_params();
io::ParamsHz fig5_params();

struct PulsedOptions {
  double duration = 12e-6;  ///< seconds
  std::size_t samples = 4001;
  bool spectrum = true;
  std::vector<double> spectrum_times = {2e-6, 4e-6, 6e-6, 8e-6};
  std::size_t width_points = 60;
};

struct PulsedOutputs {
  std::string trajectory;
  std::vector<std::string> spectra;
  std::string linewidth;
};

PulsedOutputs run_pulsed(Context& ctx, const PhysParams& p, const PulsedOptions& o);

struct ContinuousOptions {
  std::string variant = "continuous_spont";
  double duration_relax = 20.0;  ///< in units of 1/Gamma_R
  double seed_fraction = 0.03;   ///< initial |Sm| / N
  std::optional<double> Sz0_fraction;  ///< initial Sz / N, default 1/2
  std::size_t samples = 4001;
  bool spectrum = true;
};

struct ContinuousOutputs {
  std::string trajectory;
  std::string spectrum;
};

ContinuousOutputs run_continuous(Context& ctx, const PhysParams& p,
                                 const ContinuousOptions& o,
                                 const std::string& prefix = "");

struct PhaseDiagramOptions {
  std::vector<std::string> axes;  ///< name:scale:min:max:count
  double relax_periods = 40.0;
  double min_duration = 4.0;
  std::size_t samples = 65536;
};

void run_phase_diagram(Context& ctx, const PhysParams& p,
                       const PhaseDiagramOptions& o);

struct McOptions {
  std::optional<double> x;  ///< sets Gamma_R from N^2 C'
  std::size_t realizations = 50;
  std::uint64_t events = 0;  ///< 0 picks a count from correlation_times
  std::optional<double> correlation_times;
  std::optional<double> burn_in;
};

void run_mc(Context& ctx, PhysParams p, const McOptions& o);

struct CumulantOptions {
  double duration_relax = 20.0;
  double sz0 = 0.0;
  double sm0 = 0.3;
  std::size_t samples = 2001;
  bool mean_field = true;
};

void run_cumulant(Context& ctx, const PhysParams& p, const CumulantOptions& o,
                  const std::string& prefix = "");

struct SpectrumOptions {
  std::string input;
  std::optional<double> t_end;
  std::size_t points = 4001;
  double span_hwhm = 10.0;
};

void run_spectrum(Context& ctx, const SpectrumOptions& o);

void run_figure(Context& ctx, const std::string& which);

/// N^2 C' -> Gamma_R at fixed g, kappa, N.
double gamma_r_for_x(const PhysParams& p, double x);

}  // namespace srl::cli
