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
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "srlaser/common.hpp"
#include "srlaser/params.hpp"

namespace srl::ode {

using StateVector = std::vector<Complex>;

/// dy/dt = f(t, y). Must write exactly `y.size()` derivatives into `dydt`.
using RhsFunction =
    std::function<void(double t, std::span<const Complex> y,
                       std::span<Complex> dydt)>;

struct OdeSystem {
  std::size_t dimension = 0;
  RhsFunction rhs;
};

enum class Method { kRk4Fixed, kRk45Adaptive };

struct IntegrationPolicy {
  Method method = Method::kRk45Adaptive;
  double dt = 0.0;  ///< step of the fixed method; initial guess for rk45
  double rtol = 1e-8;
  double atol = 1e-12;
  double dt_min = 1e-300;
  double dt_max = std::numeric_limits<double>::infinity();
  /// Accepted steps between recorded samples (ignored if sample_interval > 0).
  std::size_t record_stride = 1;
  /// When positive, samples are recorded on the uniform grid t0 + k*interval
  /// and steps are clipped to land on it.
  double sample_interval = 0.0;

  static IntegrationPolicy fixed_step(double dt, std::size_t stride = 1);
  static IntegrationPolicy adaptive(double rtol, double atol, double dt_min,
                                    double dt_max);
  /// rk45, rtol 1e-8, atol 1e-12, dt_max = 0.05 / max(kappa, N g^2/kappa,
  /// Gamma_R).
  static IntegrationPolicy defaults_for(const PhysParams& p);

  /// Largest step this policy can take.
  double max_step() const {
    return method == Method::kRk4Fixed ? dt : dt_max;
  }
};

void check(const IntegrationPolicy& policy);

struct Trajectory {
  std::vector<double> t;
  std::vector<StateVector> y;
};

/// Integrates from t0 to t1. The first sample is (t0, y0) and the last is
/// exactly t1. Throws StiffnessError when rk45 would need a step below dt_min.
Trajectory integrate(const OdeSystem& system, StateVector y0, double t0,
                     double t1, const IntegrationPolicy& policy);

/// Called after every accepted step; return false to stop early.
using StepObserver =
    std::function<bool(double t, std::span<const Complex> y)>;

/// Low-level driver: advances `y` in place from t0 toward t1 and returns the
/// time reached (t1 unless the observer stopped it).
double advance(const OdeSystem& system, std::span<Complex> y, double t0,
               double t1, const IntegrationPolicy& policy,
               const StepObserver& observer = {});

/// max_i |f_i(t, y)|.
double residual_inf(const OdeSystem& system, double t,
                    std::span<const Complex> y);

struct SteadyStateCriterion {
  double eps = 1e-10;      ///< residual tolerance on ||rhs||_inf
  double window = 0.0;     ///< residual must stay below eps this long
  double max_time = 0.0;   ///< give up after integrating this long
};

/// Integrates until ||rhs(y)||_inf <= eps has held over a full window, and
/// returns that state. Throws TimeoutError with the last residual otherwise.
StateVector find_steady_state(const OdeSystem& system, StateVector y0,
                              const IntegrationPolicy& policy,
                              const SteadyStateCriterion& criterion);

/// Classical RK4 with preallocated stage buffers, for hot loops that take
/// many short fixed steps on one system.
class FixedStepper {
 public:
  explicit FixedStepper(const OdeSystem& system);

  /// Takes `substeps` equal RK4 steps covering [t, t + h].
  void advance(double t, std::span<Complex> y, double h, int substeps = 1);

 private:
  const OdeSystem* system_;
  StateVector k1_, k2_, k3_, k4_, tmp_;
};

}  // namespace srl::ode
