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

// Built with -mavx2 -mfma. Only reached through the dispatcher after a CPU
// feature check.

#include <immintrin.h>

#include <cmath>

#include "srlaser/kernels/dispatch.hpp"

namespace srl::kernels::avx2 {

namespace {

// Phasors advance by complex multiplication and are reset from sincos at this
// interval to bound the accumulated rounding.
constexpr std::size_t kReseed = 64;

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void oscillatory_sum(std::span<const Complex> wb, double t0, double dt,
                     std::span<const double> omega, std::span<Complex> out) {
  const std::size_t n = wb.size();
  const std::size_t m = omega.size();
  const double* data = reinterpret_cast<const double*>(wb.data());

  std::size_t k = 0;
  for (; k + 4 <= m; k += 4) {
    alignas(32) double zr_a[4], zi_a[4], sr_a[4], si_a[4];
    for (int l = 0; l < 4; ++l) {
      sr_a[l] = std::cos(omega[k + l] * dt);
      si_a[l] = std::sin(omega[k + l] * dt);
    }
    const __m256d sr = _mm256_load_pd(sr_a);
    const __m256d si = _mm256_load_pd(si_a);
    __m256d acc_r = _mm256_setzero_pd();
    __m256d acc_i = _mm256_setzero_pd();

    for (std::size_t base = 0; base < n; base += kReseed) {
      const double tb = t0 + static_cast<double>(base) * dt;
      for (int l = 0; l < 4; ++l) {
        zr_a[l] = std::cos(omega[k + l] * tb);
        zi_a[l] = std::sin(omega[k + l] * tb);
      }
      __m256d zr = _mm256_load_pd(zr_a);
      __m256d zi = _mm256_load_pd(zi_a);
      const std::size_t end = base + kReseed < n ? base + kReseed : n;
      for (std::size_t i = base; i < end; ++i) {
        const __m256d br = _mm256_broadcast_sd(data + 2 * i);
        const __m256d bi = _mm256_broadcast_sd(data + 2 * i + 1);
        acc_r = _mm256_fmadd_pd(br, zr, acc_r);
        acc_r = _mm256_fnmadd_pd(bi, zi, acc_r);
        acc_i = _mm256_fmadd_pd(br, zi, acc_i);
        acc_i = _mm256_fmadd_pd(bi, zr, acc_i);
        const __m256d nr = _mm256_fmsub_pd(zr, sr, _mm256_mul_pd(zi, si));
        const __m256d ni = _mm256_fmadd_pd(zr, si, _mm256_mul_pd(zi, sr));
        zr = nr;
        zi = ni;
      }
    }
    alignas(32) double rr[4], ii[4];
    _mm256_store_pd(rr, acc_r);
    _mm256_store_pd(ii, acc_i);
    for (int l = 0; l < 4; ++l) out[k + l] = Complex(rr[l], ii[l]);
  }
  if (k < m)
    scalar::oscillatory_sum(wb, t0, dt, omega.subspan(k), out.subspan(k));
}

void lagged_dot(std::span<const double> x, std::span<const std::size_t> lags,
                std::span<double> out) {
  const std::size_t n = x.size();
  const double* p = x.data();
  for (std::size_t j = 0; j < lags.size(); ++j) {
    const std::size_t lag = lags[j];
    const std::size_t len = n - lag;
    const double* q = p + lag;
    __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
    __m256d a2 = _mm256_setzero_pd(), a3 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 16 <= len; i += 16) {
      a0 = _mm256_fmadd_pd(_mm256_loadu_pd(p + i), _mm256_loadu_pd(q + i), a0);
      a1 = _mm256_fmadd_pd(_mm256_loadu_pd(p + i + 4), _mm256_loadu_pd(q + i + 4), a1);
      a2 = _mm256_fmadd_pd(_mm256_loadu_pd(p + i + 8), _mm256_loadu_pd(q + i + 8), a2);
      a3 = _mm256_fmadd_pd(_mm256_loadu_pd(p + i + 12), _mm256_loadu_pd(q + i + 12), a3);
    }
    for (; i + 4 <= len; i += 4)
      a0 = _mm256_fmadd_pd(_mm256_loadu_pd(p + i), _mm256_loadu_pd(q + i), a0);
    double acc = hsum(_mm256_add_pd(_mm256_add_pd(a0, a1), _mm256_add_pd(a2, a3)));
    for (; i < len; ++i) acc += p[i] * q[i];
    out[j] = acc;
  }
}

}  // namespace srl::kernels::avx2
