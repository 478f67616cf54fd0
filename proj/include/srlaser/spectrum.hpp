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

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "srlaser/common.hpp"
#include "srlaser/meanfield.hpp"

namespace srl::spectrum {

/// Uniformly sampled intracavity field <b>(t).
struct FieldRecord {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<Complex> b;

  std::size_t size() const { return b.size(); }
  double duration() const { return dt * static_cast<double>(b.size() - 1); }
  double time(std::size_t i) const { return t0 + dt * static_cast<double>(i); }

  /// Checks that `t` is uniform to 1e-9 relative and has at least 16 samples.
  static FieldRecord from_samples(std::span<const double> t,
                                  std::span<const Complex> b);
};

inline constexpr std::size_t kMinRecordLength = 16;

void check(const FieldRecord& r);

/// Field of a uniformly sampled trajectory, optionally cut at `t_end`.
FieldRecord from_trajectory(const mf::MfTrajectory& traj,
                            std::optional<double> t_end = std::nullopt);

/// Peak-normalised |a(omega)|^2 on an ascending grid of angular offsets from
/// the atomic resonance.
struct Spectrum {
  std::vector<double> omega;
  std::vector<double> intensity;
};

/// `points` equally spaced values over [center - half_span, center + half_span].
std::vector<double> linear_grid(double center, double half_span,
                                std::size_t points);

/// 4001 points over +-40/T, clipped to the Nyquist band.
std::vector<double> default_grid(const FieldRecord& r);

/// Trapezoid-rule output amplitudes sum_i w_i b_i exp(i omega t_i), without
/// the coupling prefactor. Throws ValidationError for |omega| > pi/dt.
std::vector<Complex> output_amplitudes(const FieldRecord& r,
                                       std::span<const double> omega);

/// Direct evaluation on `omega`.
Spectrum compute_spectrum(const FieldRecord& r, std::span<const double> omega);

/// FFT evaluation of the same sum on the grid 2 pi m / (M dt),
/// M = pad_factor * n, reordered to ascending frequency over the full band.
Spectrum compute_spectrum_fft(const FieldRecord& r, std::size_t pad_factor = 8);

/// Mean of the left and right half widths at half maximum, each found by
/// linear interpolation. Throws NumericError if the maximum is not unique or
/// a half-maximum crossing is missing ("grid too narrow").
double linewidth_hwhm(const Spectrum& s);

struct LinewidthOptions {
  std::size_t pad_factor = 8;
  std::size_t refine_factor = 8;
  std::size_t refine_points = 801;
};

/// HWHM of the emitted spectrum: coarse FFT over the full band, then direct
/// evaluation around the peak on a grid `refine_factor` times finer. Lines
/// wider than `refine_points` coarse bins are already resolved and keep the
/// coarse estimate.
double measure_linewidth(const FieldRecord& r, const LinewidthOptions& opt = {});

}  // namespace srl::spectrum
