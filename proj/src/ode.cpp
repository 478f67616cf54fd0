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

#include "srlaser/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace srl::ode {

IntegrationPolicy IntegrationPolicy::fixed_step(double dt, std::size_t stride) {
  IntegrationPolicy p;
  p.method = Method::kRk4Fixed;
  p.dt = dt;
  p.record_stride = stride;
  return p;
}

IntegrationPolicy IntegrationPolicy::adaptive(double rtol, double atol,
                                              double dt_min, double dt_max) {
  IntegrationPolicy p;
  p.method = Method::kRk45Adaptive;
  p.rtol = rtol;
  p.atol = atol;
  p.dt_min = dt_min;
  p.dt_max = dt_max;
  return p;
}

IntegrationPolicy IntegrationPolicy::defaults_for(const PhysParams& params) {
  const double fastest =
      std::max({params.kappa, params.collective_rate(), params.gamma_r()});
  return adaptive(1e-8, 1e-12, 1e-300, 0.05 / fastest);
}

void check(const IntegrationPolicy& policy) {
  if (policy.method == Method::kRk4Fixed) {
    if (!(policy.dt > 0.0) || !std::isfinite(policy.dt))
      throw ValidationError("dt", "fixed step must be positive");
  } else {
    if (!(policy.rtol > 0.0)) throw ValidationError("rtol", "must be positive");
    if (!(policy.atol > 0.0)) throw ValidationError("atol", "must be positive");
    if (!(policy.dt_min > 0.0))
      throw ValidationError("dt_min", "must be positive");
    if (!(policy.dt_min <= policy.dt_max))
      throw ValidationError("dt_max", "must not be below dt_min");
  }
  if (policy.record_stride == 0)
    throw ValidationError("record_stride", "must be at least 1");
  if (policy.sample_interval < 0.0 || !std::isfinite(policy.sample_interval))
    throw ValidationError("sample_interval", "must be non-negative");
}

namespace {

void check_system(const OdeSystem& system, std::size_t size) {
  if (system.dimension == 0 || !system.rhs)
    throw ValidationError("system", "empty ODE system");
  if (size != system.dimension)
    throw ValidationError("y0", "dimension does not match the system");
}

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

// Holds stage buffers and the step-size state across consecutive segments so
// that clipping at sample times does not reset the controller.
class Driver {
 public:
  Driver(const OdeSystem& system, const IntegrationPolicy& policy)
      : system_(system), policy_(policy), n_(system.dimension) {
    for (auto* v : {&k1_, &k2_, &k3_, &k4_, &k5_, &k6_, &k7_, &tmp_, &ynew_})
      v->assign(n_, Complex{});
    h_ = policy.dt;
  }

  // Advances y from t to target. Observer is called after each accepted step.
  // Returns the time reached.
  double run(std::span<Complex> y, double t, double target,
             const StepObserver& observer) {
    if (policy_.method == Method::kRk4Fixed) return run_rk4(y, t, target, observer);
    return run_rk45(y, t, target, observer);
  }

 private:
  void eval(double t, std::span<const Complex> y, StateVector& out) {
    system_.rhs(t, y, out);
  }

  double run_rk4(std::span<Complex> y, double t, double target,
                 const StepObserver& observer) {
    const double dt = policy_.dt;
    while (t < target) {
      double h = dt;
      bool last = false;
      if (target - t <= h * (1.0 + 1e-12)) {
        h = target - t;
        last = true;
      }
      rk4_step(y, t, h);
      t = last ? target : t + h;
      if (observer && !observer(t, y)) return t;
    }
    return t;
  }

  void rk4_step(std::span<Complex> y, double t, double h) {
    eval(t, y, k1_);
    for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + 0.5 * h * k1_[i];
    eval(t + 0.5 * h, tmp_, k2_);
    for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + 0.5 * h * k2_[i];
    eval(t + 0.5 * h, tmp_, k3_);
    for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + h * k3_[i];
    eval(t + h, tmp_, k4_);
    for (std::size_t i = 0; i < n_; ++i)
      y[i] += h / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
  }

  double initial_step(std::span<const Complex> y, double t, double span) {
    // Hairer, Norsett & Wanner, "Solving ODEs I", II.4.
    eval(t, y, k1_);
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double sc = policy_.atol + policy_.rtol * std::abs(y[i]);
      d0 = std::max(d0, std::abs(y[i]) / sc);
      d1 = std::max(d1, std::abs(k1_[i]) / sc);
    }
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * span : 0.01 * d0 / d1;
    h0 = std::min({h0, span, policy_.dt_max});
    for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + h0 * k1_[i];
    eval(t + h0, tmp_, k2_);
    double d2 = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double sc = policy_.atol + policy_.rtol * std::abs(y[i]);
      d2 = std::max(d2, std::abs(k2_[i] - k1_[i]) / sc);
    }
    d2 /= h0;
    const double dmax = std::max(d1, d2);
    const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3)
                                    : std::pow(0.01 / dmax, 1.0 / 5.0);
    return std::min({100.0 * h0, h1, span, policy_.dt_max});
  }

  double run_rk45(std::span<Complex> y, double t, double target,
                  const StepObserver& observer) {
    if (!(h_ > 0.0)) h_ = initial_step(y, t, target - t);
    if (!fsal_valid_) {
      eval(t, y, k1_);
      fsal_valid_ = true;
    }
    while (t < target) {
      double h = std::min(h_, policy_.dt_max);
      bool last = false;
      if (t + h >= target || target - t <= h * (1.0 + 1e-12)) {
        h = target - t;
        last = true;
      }
      if (h < policy_.dt_min && !last)
        throw StiffnessError(t, "step size underflow below dt_min");

      const double err = try_step(y, t, h);
      if (err <= 1.0) {
        for (std::size_t i = 0; i < n_; ++i) y[i] = ynew_[i];
        std::swap(k1_, k7_);
        t = last ? target : t + h;
        const double fac =
            err == 0.0 ? 5.0 : std::clamp(0.8 * std::pow(err, -0.2), 0.2, 5.0);
        // A clipped final step says nothing about the natural step size.
        if (!last || h >= h_) h_ = std::min(h * fac, policy_.dt_max);
        if (observer && !observer(t, y)) return t;
      } else {
        const double fac = std::isfinite(err)
                               ? std::clamp(0.8 * std::pow(err, -0.2), 0.1, 1.0)
                               : 0.1;
        h_ = h * fac;
        if (h_ < policy_.dt_min)
          throw StiffnessError(t, "step size underflow below dt_min");
      }
    }
    return t;
  }

  // One Dormand-Prince step of size h. Writes the candidate into ynew_ and
  // f(t+h, ynew) into k7_. Returns the scaled error norm.
  double try_step(std::span<const Complex> y, double t, double h) {
    for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + h * a21 * k1_[i];
    eval(t + c2 * h, tmp_, k2_);
    for (std::size_t i = 0; i < n_; ++i)
      tmp_[i] = y[i] + h * (a31 * k1_[i] + a32 * k2_[i]);
    eval(t + c3 * h, tmp_, k3_);
    for (std::size_t i = 0; i < n_; ++i)
      tmp_[i] = y[i] + h * (a41 * k1_[i] + a42 * k2_[i] + a43 * k3_[i]);
    eval(t + c4 * h, tmp_, k4_);
    for (std::size_t i = 0; i < n_; ++i)
      tmp_[i] = y[i] + h * (a51 * k1_[i] + a52 * k2_[i] + a53 * k3_[i] +
                            a54 * k4_[i]);
    eval(t + c5 * h, tmp_, k5_);
    for (std::size_t i = 0; i < n_; ++i)
      tmp_[i] = y[i] + h * (a61 * k1_[i] + a62 * k2_[i] + a63 * k3_[i] +
                            a64 * k4_[i] + a65 * k5_[i]);
    eval(t + h, tmp_, k6_);
    for (std::size_t i = 0; i < n_; ++i)
      ynew_[i] = y[i] + h * (b1 * k1_[i] + b3 * k3_[i] + b4 * k4_[i] +
                             b5 * k5_[i] + b6 * k6_[i]);
    eval(t + h, ynew_, k7_);
    double err = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const Complex e = h * (e1 * k1_[i] + e3 * k3_[i] + e4 * k4_[i] +
                             e5 * k5_[i] + e6 * k6_[i] + e7 * k7_[i]);
      const double sc = policy_.atol +
                        policy_.rtol * std::max(std::abs(y[i]), std::abs(ynew_[i]));
      const double ratio = std::abs(e) / sc;
      if (!std::isfinite(ratio)) return std::numeric_limits<double>::infinity();
      err = std::max(err, ratio);
    }
    return err;
  }

  const OdeSystem& system_;
  const IntegrationPolicy& policy_;
  std::size_t n_;
  StateVector k1_, k2_, k3_, k4_, k5_, k6_, k7_, tmp_, ynew_;
  double h_ = 0.0;
  bool fsal_valid_ = false;
};

void check_interval(double t0, double t1) {
  if (!std::isfinite(t0) || !std::isfinite(t1) || !(t1 > t0))
    throw ValidationError("t1", "integration end must be after start");
}

}  // namespace

double advance(const OdeSystem& system, std::span<Complex> y, double t0,
               double t1, const IntegrationPolicy& policy,
               const StepObserver& observer) {
  check(policy);
  check_system(system, y.size());
  check_interval(t0, t1);
  Driver driver(system, policy);
  return driver.run(y, t0, t1, observer);
}

Trajectory integrate(const OdeSystem& system, StateVector y0, double t0,
                     double t1, const IntegrationPolicy& policy) {
  check(policy);
  check_system(system, y0.size());
  check_interval(t0, t1);

  Trajectory out;
  out.t.push_back(t0);
  out.y.push_back(y0);
  Driver driver(system, policy);
  StateVector y = std::move(y0);

  if (policy.sample_interval > 0.0) {
    const double dt = policy.sample_interval;
    const auto count = static_cast<std::size_t>(std::floor((t1 - t0) / dt + 1e-9));
    double t = t0;
    for (std::size_t k = 1; k <= count; ++k) {
      const double target = std::min(t0 + static_cast<double>(k) * dt, t1);
      if (target <= t) continue;
      t = driver.run(y, t, target, {});
      out.t.push_back(target);
      out.y.push_back(y);
    }
    if (t < t1) {
      driver.run(y, t, t1, {});
      out.t.push_back(t1);
      out.y.push_back(y);
    }
    return out;
  }

  std::size_t steps = 0;
  driver.run(y, t0, t1, [&](double t, std::span<const Complex> state) {
    ++steps;
    if (steps % policy.record_stride == 0 || t >= t1) {
      out.t.push_back(t);
      out.y.emplace_back(state.begin(), state.end());
    }
    return true;
  });
  if (out.t.back() != t1) {
    out.t.push_back(t1);
    out.y.push_back(y);
  }
  return out;
}

double residual_inf(const OdeSystem& system, double t,
                    std::span<const Complex> y) {
  StateVector f(system.dimension);
  system.rhs(t, y, f);
  double r = 0.0;
  for (const auto& v : f) r = std::max(r, std::abs(v));
  return r;
}

StateVector find_steady_state(const OdeSystem& system, StateVector y0,
                              const IntegrationPolicy& policy,
                              const SteadyStateCriterion& criterion) {
  if (!(criterion.eps > 0.0)) throw ValidationError("eps", "must be positive");
  if (!(criterion.window >= 0.0))
    throw ValidationError("window", "must be non-negative");
  if (!(criterion.max_time > criterion.window))
    throw ValidationError("max_time", "must exceed the detection window");
  check(policy);
  check_system(system, y0.size());

  StateVector y = std::move(y0);
  StateVector f(system.dimension);
  auto residual = [&](double t, std::span<const Complex> state) {
    system.rhs(t, state, f);
    double r = 0.0;
    for (const auto& v : f) r = std::max(r, std::abs(v));
    return r;
  };

  double last = residual(0.0, y);
  std::optional<double> below_since;
  if (last <= criterion.eps) below_since = 0.0;
  if (below_since && criterion.window == 0.0) return y;

  bool done = false;
  Driver driver(system, policy);
  driver.run(y, 0.0, criterion.max_time,
             [&](double t, std::span<const Complex> state) {
               last = residual(t, state);
               if (last <= criterion.eps) {
                 if (!below_since) below_since = t;
                 if (t - *below_since >= criterion.window) {
                   done = true;
                   return false;
                 }
               } else {
                 below_since.reset();
               }
               return true;
             });
  if (!done)
    throw TimeoutError(last, "steady state not reached within max_time");
  return y;
}

FixedStepper::FixedStepper(const OdeSystem& system)
    : system_(&system),
      k1_(system.dimension),
      k2_(system.dimension),
      k3_(system.dimension),
      k4_(system.dimension),
      tmp_(system.dimension) {}

void FixedStepper::advance(double t, std::span<Complex> y, double h,
                           int substeps) {
  const std::size_t n = y.size();
  const double dt = h / substeps;
  for (int s = 0; s < substeps; ++s) {
    const double ts = t + s * dt;
    system_->rhs(ts, y, k1_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + 0.5 * dt * k1_[i];
    system_->rhs(ts + 0.5 * dt, tmp_, k2_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + 0.5 * dt * k2_[i];
    system_->rhs(ts + 0.5 * dt, tmp_, k3_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + dt * k3_[i];
    system_->rhs(ts + dt, tmp_, k4_);
    for (std::size_t i = 0; i < n; ++i)
      y[i] += dt / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
  }
}

}  // namespace srl::ode
