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

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace srl {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Converts an ordinary frequency in Hz to an angular rate in rad/s.
constexpr double hz_to_angular(double hz) { return kTwoPi * hz; }
constexpr double angular_to_hz(double omega) { return omega / kTwoPi; }

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input. `field()` names the offending parameter.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// The adaptive integrator could not satisfy its tolerance above dt_min, or a
/// fixed-step policy does not resolve the fastest rate of the system.
class StiffnessError : public Error {
 public:
  StiffnessError(double time, const std::string& what)
      : Error(what + " (t = " + std::to_string(time) + " s)"), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

class TimeoutError : public Error {
 public:
  TimeoutError(double last_residual, const std::string& what)
      : Error(what + " (last residual " + std::to_string(last_residual) + ")"),
        last_residual_(last_residual) {}
  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

/// Numerical failure that is not a stiffness or convergence problem
/// (degenerate spectrum, divergent closed form, failed fit, ...).
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace srl
