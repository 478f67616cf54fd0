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
#include <span>
#include <string_view>

#include "srlaser/common.hpp"

namespace srl::kernels {

enum class Backend { kAuto, kScalar, kAvx2 };

std::string_view to_string(Backend b);

/// True when the AVX2 kernels were built and the CPU reports avx2 and fma.
bool avx2_available();

/// Backend used by the dispatching entry points. Resolved on first use from
/// the CPU and the SRLASER_KERNELS environment variable ("scalar" or "avx2").
Backend active_backend();

/// Forces a backend. kAuto restores detection. Requesting kAvx2 on a CPU
/// without it throws Error.
void set_backend(Backend b);

/// out[k] = sum_i wb[i] * exp(i * omega[k] * (t0 + i * dt)).
void oscillatory_sum(std::span<const Complex> wb, double t0, double dt,
                     std::span<const double> omega, std::span<Complex> out);

/// out[j] = sum_{i < n - lag[j]} x[i] * x[i + lag[j]]. Lags must be < n.
void lagged_dot(std::span<const double> x, std::span<const std::size_t> lags,
                std::span<double> out);

namespace scalar {
void oscillatory_sum(std::span<const Complex> wb, double t0, double dt,
                     std::span<const double> omega, std::span<Complex> out);
void lagged_dot(std::span<const double> x, std::span<const std::size_t> lags,
                std::span<double> out);
}  // namespace scalar

namespace avx2 {
void oscillatory_sum(std::span<const Complex> wb, double t0, double dt,
                     std::span<const double> omega, std::span<Complex> out);
void lagged_dot(std::span<const double> x, std::span<const std::size_t> lags,
                std::span<double> out);
}  // namespace avx2

}  // namespace srl::kernels
