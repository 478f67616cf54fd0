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

#include "srlaser/kernels/dispatch.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace srl::kernels {

std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::kAuto: return "auto";
    case Backend::kScalar: return "scalar";
    case Backend::kAvx2: return "avx2";
  }
  return "?";
}

bool avx2_available() {
#if defined(SRLASER_HAVE_AVX2_KERNELS)
  static const bool ok = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return ok;
#else
  return false;
#endif
}

namespace {

std::atomic<Backend> g_backend{Backend::kAuto};

Backend detect() {
  if (const char* env = std::getenv("SRLASER_KERNELS")) {
    const std::string v(env);
    if (v == "scalar") return Backend::kScalar;
    if (v == "avx2" && avx2_available()) return Backend::kAvx2;
  }
  return avx2_available() ? Backend::kAvx2 : Backend::kScalar;
}

}  // namespace

Backend active_backend() {
  Backend b = g_backend.load(std::memory_order_acquire);
  if (b == Backend::kAuto) {
    b = detect();
    g_backend.store(b, std::memory_order_release);
  }
  return b;
}

void set_backend(Backend b) {
  if (b == Backend::kAvx2 && !avx2_available())
    throw Error("AVX2 kernels are not available on this CPU");
  g_backend.store(b, std::memory_order_release);
}

void oscillatory_sum(std::span<const Complex> wb, double t0, double dt,
                     std::span<const double> omega, std::span<Complex> out) {
#if defined(SRLASER_HAVE_AVX2_KERNELS)
  if (active_backend() == Backend::kAvx2)
    return avx2::oscillatory_sum(wb, t0, dt, omega, out);
#endif
  scalar::oscillatory_sum(wb, t0, dt, omega, out);
}

void lagged_dot(std::span<const double> x, std::span<const std::size_t> lags,
                std::span<double> out) {
#if defined(SRLASER_HAVE_AVX2_KERNELS)
  if (active_backend() == Backend::kAvx2) return avx2::lagged_dot(x, lags, out);
#endif
  scalar::lagged_dot(x, lags, out);
}

}  // namespace srl::kernels
