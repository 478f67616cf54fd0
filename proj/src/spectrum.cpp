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

#include "srlaser/spectrum.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

#include "srlaser/kernels/dispatch.hpp"

namespace srl::spectrum {

FieldRecord FieldRecord::from_samples(std::span<const double> t,
                                      std::span<const Complex> b) {
  if (t.size() != b.size())
    throw ValidationError("record", "time and field lengths differ");
  if (t.size() < kMinRecordLength)
    throw ValidationError("record", "needs at least 16 samples");
  const double dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  if (!(dt > 0.0)) throw ValidationError("record", "times must increase");
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (std::abs((t[i] - t[i - 1]) - dt) > 1e-9 * dt)
      throw ValidationError("record", "samples are not uniformly spaced");
  }
  FieldRecord r;
  r.t0 = t.front();
  r.dt = dt;
  r.b.assign(b.begin(), b.end());
  return r;
}

void check(const FieldRecord& r) {
  if (r.size() < kMinRecordLength)
    throw ValidationError("record", "needs at least 16 samples");
  if (!(r.dt > 0.0) || !std::isfinite(r.dt))
    throw ValidationError("record", "sample interval must be positive");
}

FieldRecord from_trajectory(const mf::MfTrajectory& traj,
                            std::optional<double> t_end) {
  std::size_t n = traj.size();
  if (t_end) {
    n = static_cast<std::size_t>(
        std::upper_bound(traj.t.begin(), traj.t.end(), *t_end * (1.0 + 1e-12)) -
        traj.t.begin());
  }
  return FieldRecord::from_samples(std::span(traj.t).first(n),
                                   std::span(traj.b).first(n));
}

std::vector<double> linear_grid(double center, double half_span,
                                std::size_t points) {
  if (points < 2) throw ValidationError("points", "grid needs at least 2 points");
  if (!(half_span > 0.0))
    throw ValidationError("half_span", "must be positive");
  std::vector<double> g(points);
  const double step = 2.0 * half_span / static_cast<double>(points - 1);
  const double mid = 0.5 * static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i)
    g[i] = center + step * (static_cast<double>(i) - mid);
  return g;
}

std::vector<double> default_grid(const FieldRecord& r) {
  check(r);
  const double nyquist = std::numbers::pi / r.dt;
  return linear_grid(0.0, std::min(40.0 / r.duration(), nyquist), 4001);
}

std::vector<Complex> output_amplitudes(const FieldRecord& r,
                                       std::span<const double> omega) {
  check(r);
  const double nyquist = std::numbers::pi / r.dt;
  for (double w : omega) {
    if (!(std::abs(w) <= nyquist * (1.0 + 1e-12)))
      throw ValidationError("grid", "frequency beyond the Nyquist limit pi/dt");
  }
  std::vector<Complex> wb(r.b);
  wb.front() *= 0.5;
  wb.back() *= 0.5;
  for (auto& v : wb) v *= r.dt;
  std::vector<Complex> a(omega.size());
  kernels::oscillatory_sum(wb, r.t0, r.dt, omega, a);
  return a;
}

namespace {

Spectrum normalised(std::vector<double> omega, std::vector<Complex> const& a) {
  Spectrum s;
  s.omega = std::move(omega);
  s.intensity.resize(a.size());
  double peak = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    s.intensity[k] = std::norm(a[k]);
    peak = std::max(peak, s.intensity[k]);
  }
  if (!(peak > 0.0) || !std::isfinite(peak))
    throw NumericError("degenerate spectrum (zero or non-finite peak)");
  for (auto& v : s.intensity) v /= peak;
  return s;
}

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwDeleter {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};

}  // namespace

Spectrum compute_spectrum(const FieldRecord& r, std::span<const double> omega) {
  if (omega.size() < 3) throw ValidationError("grid", "needs at least 3 points");
  for (std::size_t k = 1; k < omega.size(); ++k) {
    if (!(omega[k] > omega[k - 1]))
      throw ValidationError("grid", "must be strictly ascending");
  }
  auto a = output_amplitudes(r, omega);
  return normalised(std::vector<double>(omega.begin(), omega.end()), a);
}

Spectrum compute_spectrum_fft(const FieldRecord& r, std::size_t pad_factor) {
  check(r);
  if (pad_factor < 1) throw ValidationError("pad_factor", "must be at least 1");
  const std::size_t n = r.size();
  const std::size_t M = n * pad_factor;

  std::unique_ptr<fftw_complex, FftwDeleter> buf(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * M)));
  if (!buf) throw NumericError("FFT buffer allocation failed");
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(M), buf.get(), buf.get(),
                            FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  if (!plan) throw NumericError("FFT plan creation failed");

  fftw_complex* x = buf.get();
  for (std::size_t i = 0; i < M; ++i) {
    Complex v{0.0, 0.0};
    if (i < n) {
      v = r.b[i] * r.dt;
      if (i == 0 || i == n - 1) v *= 0.5;
    }
    x[i][0] = v.real();
    x[i][1] = v.imag();
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }

  // Bin m maps to omega = 2 pi m / (M dt), m in [-M/2, M/2).
  const double dw = kTwoPi / (static_cast<double>(M) * r.dt);
  const std::size_t half = M / 2;
  std::vector<double> omega(M);
  std::vector<Complex> a(M);
  for (std::size_t j = 0; j < M; ++j) {
    const std::size_t m = (j + (M - half)) % M;  // ascending order
    const double w = (m >= M - half) ? -dw * static_cast<double>(M - m)
                                     : dw * static_cast<double>(m);
    omega[j] = w;
    a[j] = Complex(x[m][0], x[m][1]) * std::polar(1.0, w * r.t0);
  }
  return normalised(std::move(omega), a);
}

double linewidth_hwhm(const Spectrum& s) {
  const auto& I = s.intensity;
  const auto& w = s.omega;
  const std::size_t n = I.size();
  if (n < 3 || w.size() != n) throw NumericError("spectrum too short");
  const auto it = std::max_element(I.begin(), I.end());
  const std::size_t ip = static_cast<std::size_t>(it - I.begin());
  const double peak = *it;
  for (std::size_t k = 0; k < n; ++k) {
    if (k != ip && I[k] == peak)
      throw NumericError("spectrum has multiple equal maxima");
  }
  if (ip == 0 || ip == n - 1) throw NumericError("grid too narrow");

  const double half = 0.5 * peak;
  std::size_t lo = ip;
  while (lo > 0 && I[lo] > half) --lo;
  std::size_t hi = ip;
  while (hi + 1 < n && I[hi] > half) ++hi;
  if (I[lo] > half || I[hi] > half) throw NumericError("grid too narrow");

  const double wl = w[lo] + (half - I[lo]) / (I[lo + 1] - I[lo]) * (w[lo + 1] - w[lo]);
  const double wr = w[hi - 1] + (half - I[hi - 1]) / (I[hi] - I[hi - 1]) * (w[hi] - w[hi - 1]);
  return 0.5 * ((w[ip] - wl) + (wr - w[ip]));
}

double measure_linewidth(const FieldRecord& r, const LinewidthOptions& opt) {
  if (opt.refine_factor < 1 || opt.refine_points < 3)
    throw ValidationError("linewidth", "invalid refinement options");
  const Spectrum coarse = compute_spectrum_fft(r, opt.pad_factor);
  const double h_coarse = linewidth_hwhm(coarse);
  const std::size_t ip = static_cast<std::size_t>(
      std::max_element(coarse.intensity.begin(), coarse.intensity.end()) -
      coarse.intensity.begin());
  const double center = coarse.omega[ip];
  const double bin = coarse.omega[1] - coarse.omega[0];

  const double nyquist = std::numbers::pi / r.dt;
  double half_span = std::max(4.0 * h_coarse, 8.0 * bin);
  half_span = std::min(half_span, nyquist - std::abs(center));
  if (2.0 * half_span / static_cast<double>(opt.refine_points - 1) > bin)
    return h_coarse;

  const double step = bin / static_cast<double>(opt.refine_factor);
  auto points = std::min<std::size_t>(
      static_cast<std::size_t>(std::ceil(2.0 * half_span / step)) + 1,
      opt.refine_points * opt.refine_factor);
  points |= 1;  // keep the center on the grid
  const auto grid = linear_grid(center, half_span, points);
  return linewidth_hwhm(compute_spectrum(r, grid));
}

}  // namespace srl::spectrum
