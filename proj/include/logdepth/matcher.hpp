// Copyright 2026 The logdepth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Solves the shallow path's RY steering angle so that both architectures
// halt with the same total probability.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

#include "logdepth/circuit.hpp"
#include "logdepth/errors.hpp"
#include "logdepth/simulation.hpp"
#include "logdepth/statevector.hpp"

namespace logdepth {

inline constexpr double kThetaTolerance = 1e-12;
inline constexpr int kMaxBisectionIterations = 200;
inline constexpr int kBracketSamples = 1024;

struct MatchResult {
  double theta = 0.0;
  double achieved_p = 0.0;
  double target_p = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool closed_form = false;
};

/// theta = 2 acos(sqrt(p)), the RY angle taking |0> to halting weight p on
/// |0><0|.
inline double solve_ry_closed_form(double target_p) {
  if (!(target_p >= 0.0 && target_p <= 1.0)) {
    throw ContractViolation("target probability must lie in [0, 1]");
  }
  return 2.0 * std::acos(std::sqrt(target_p));
}

/// Shallow halting probability as a function of the steering angle. The
/// T-1 step prefix is simulated once.
class SteeringObjective {
 public:
  explicit SteeringObjective(const CircuitPair& pair) : pair_(&pair) {
    const GateOp* steer = steering_gate(pair);
    if (steer == nullptr) {
      throw ContractViolation("shallow program does not end in an RY steering gate");
    }
    steer_ = *steer;
    PureState state = zero_state(pair.n);
    for (std::size_t s = 0; s + 1 < pair.shallow.size(); ++s) state.apply(pair.shallow.steps[s]);
    prefix_ = std::move(state);
  }

  double operator()(double theta) const {
    GateOp g = steer_;
    g.angle = theta;
    return shared_halting_probability(*pair_, apply_gate(*prefix_, g));
  }

  const GateOp& steering() const { return steer_; }
  const PureState& prefix_state() const { return *prefix_; }

 private:
  const CircuitPair* pair_;
  GateOp steer_;
  std::optional<PureState> prefix_;
};

/// Finds theta in [0, pi] with |P'_halt(theta) - P_halt| <= tol.
///
/// When the halting projector is shared and sits on the steering qubit, and
/// that qubit is still |0> before the rotation, P'_halt(theta) is cos^2 or
/// sin^2 of theta/2 and the angle is solved in closed form. Otherwise the
/// interval is sampled for the first sign change and bisected, so the
/// smallest bracketed root is returned.
inline MatchResult solve_steering(const CircuitPair& pair, double tol = 1e-9) {
  if (!(tol > 0.0)) throw ContractViolation("tolerance must be positive");
  const SteeringObjective objective(pair);
  MatchResult r;
  r.target_p = simulate_pair(pair).p_halt_deep;

  const auto finish = [&](double theta, int iterations, bool closed) {
    r.theta = theta;
    r.iterations = iterations;
    r.closed_form = closed;
    r.achieved_p = objective(theta);
    r.residual = std::abs(r.achieved_p - r.target_p);
    return r.residual <= tol;
  };

  const int q = objective.steering().targets[0];
  if (pair.halting.uniform && pair.halting.projectors[0].qubit == q &&
      projector_probability(objective.prefix_state(), q, 0) > 1.0 - kThetaTolerance) {
    const double p0 = pair.halting.projectors[0].value == 0 ? r.target_p : 1.0 - r.target_p;
    if (finish(solve_ry_closed_form(std::clamp(p0, 0.0, 1.0)), 0, true)) return r;
  }

  const double pi = std::numbers::pi;
  const auto f = [&](double theta) { return objective(theta) - r.target_p; };
  double lo_p = 1.0;
  double hi_p = 0.0;
  double prev_theta = 0.0;
  double prev = f(0.0);
  for (int k = 0; k <= kBracketSamples; ++k) {
    const double theta = pi * k / kBracketSamples;
    const double val = k == 0 ? prev : f(theta);
    lo_p = std::min(lo_p, val + r.target_p);
    hi_p = std::max(hi_p, val + r.target_p);
    if (std::abs(val) <= tol) {
      if (finish(theta, 0, false)) return r;
    }
    if (k > 0 && (prev < 0.0) != (val < 0.0)) {
      double a = prev_theta;
      double b = theta;
      double fa = prev;
      int it = 0;
      while (b - a > kThetaTolerance && it < kMaxBisectionIterations) {
        const double mid = 0.5 * (a + b);
        const double fm = f(mid);
        ++it;
        if (fm == 0.0) {
          a = b = mid;
          break;
        }
        if ((fa < 0.0) == (fm < 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      if (finish(0.5 * (a + b), it, false)) return r;
    }
    prev_theta = theta;
    prev = val;
  }
  std::ostringstream msg;
  msg.precision(12);
  msg << "steering cannot reach P_halt = " << r.target_p << "; achievable range is [" << lo_p
      << ", " << hi_p << "]";
  throw InfeasibleError(lo_p, hi_p, msg.str());
}

}  // namespace logdepth
