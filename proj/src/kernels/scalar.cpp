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

#include "srlaser/kernels/dispatch.hpp"

namespace srl::kernels::scalar {

void oscillatory_sum(std::span<const Complex> wb, double t0, double dt,
                     std::span<const double> omega, std::span<Complex> out) {
  const std::size_t n = wb.size();
  for (std::size_t k = 0; k < omega.size(); ++k) {
    const double w = omega[k];
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double ph = w * (t0 + static_cast<double>(i) * dt);
      const double c = std::cos(ph), s = std::sin(ph);
      re += wb[i].real() * c - wb[i].imag() * s;
      im += wb[i].real() * s + wb[i].imag() * c;
    }
    out[k] = Complex(re, im);
  }
}

void lagged_dot(std::span<const double> x, std::span<const std::size_t> lags,
                std::span<double> out) {
  const std::size_t n = x.size();
  for (std::size_t j = 0; j < lags.size(); ++j) {
    const std::size_t lag = lags[j];
    double acc = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i) acc += x[i] * x[i + lag];
    out[j] = acc;
  }
}

}  // namespace srl::kernels::scalar
