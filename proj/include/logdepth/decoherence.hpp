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

// Branch distinguishability, the exp(-gamma * D) overlap model, coupling
// thresholds, entropy bounds and the logical depth factor.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "logdepth/errors.hpp"
#include "logdepth/simulation.hpp"
#include "logdepth/statevector.hpp"

namespace logdepth {

/// D_ij^(t) = sum_k (<Z_k>_i - <Z_k>_j)^2 for every step, plus the running
/// total over all steps.
struct DistinguishabilityMatrix {
  std::vector<Eigen::MatrixXd> per_step;
  Eigen::MatrixXd accumulated;

  int num_branches() const { return static_cast<int>(accumulated.rows()); }
  int steps() const { return static_cast<int>(per_step.size()); }

  /// sum_{s <= t} D^(s), t in 1..steps().
  Eigen::MatrixXd accumulated_through(int t) const {
    if (t < 1 || t > steps()) {
      throw ContractViolation("step " + std::to_string(t) + " outside [1, " +
                              std::to_string(steps()) + "]");
    }
    Eigen::MatrixXd sum = per_step[0];
    for (int s = 1; s < t; ++s) sum += per_step[static_cast<std::size_t>(s)];
    return sum;
  }

  /// Smallest off-diagonal accumulated entry.
  double min_off_diagonal() const {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < num_branches(); ++i) {
      for (int j = i + 1; j < num_branches(); ++j) best = std::min(best, accumulated(i, j));
    }
    return best;
  }
};

inline DistinguishabilityMatrix distinguishability(
    std::span<const std::reference_wrapper<const BranchTrace>> traces) {
  DistinguishabilityMatrix out;
  const auto b = static_cast<Eigen::Index>(traces.size());
  out.accumulated = Eigen::MatrixXd::Zero(b, b);
  if (traces.empty()) return out;
  const int steps = traces[0].get().steps();
  for (const auto& t : traces) {
    if (t.get().steps() != steps) throw ContractViolation("traces have different lengths");
  }
  for (int s = 0; s < steps; ++s) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(b, b);
    for (Eigen::Index i = 0; i < b; ++i) {
      const auto& zi = traces[static_cast<std::size_t>(i)].get().z_expectations[static_cast<std::size_t>(s)];
      for (Eigen::Index j = i + 1; j < b; ++j) {
        const auto& zj = traces[static_cast<std::size_t>(j)].get().z_expectations[static_cast<std::size_t>(s)];
        double sum = 0.0;
        for (std::size_t k = 0; k < zi.size(); ++k) sum += (zi[k] - zj[k]) * (zi[k] - zj[k]);
        d(i, j) = sum;
        d(j, i) = sum;
      }
    }
    out.accumulated += d;
    out.per_step.push_back(std::move(d));
  }
  return out;
}

/// Deep-architecture matrix.
inline DistinguishabilityMatrix distinguishability(const PairTrace& trace) {
  std::vector<std::reference_wrapper<const BranchTrace>> refs(trace.deep.begin(), trace.deep.end());
  return distinguishability(refs);
}

/// Shallow-architecture matrix: every branch shares the shallow trace.
inline DistinguishabilityMatrix shallow_distinguishability(const PairTrace& trace) {
  std::vector<std::reference_wrapper<const BranchTrace>> refs(trace.deep.size(),
                                                              std::cref(trace.shallow));
  return distinguishability(refs);
}

/// |<E_i|E_j>|^2 ~ exp(-gamma * D).
inline double overlap_model(double d, double gamma) {
  if (!(d >= 0.0) || !(gamma >= 0.0)) {
    throw ContractViolation("overlap_model requires D >= 0 and gamma >= 0");
  }
  return std::exp(-gamma * d);
}

/// 1 / min_{i != j} sum_t D_ij^(t). nullopt when every branch pair is
/// indistinguishable, i.e. no coupling makes branches observable.
inline std::optional<double> observability_threshold(const DistinguishabilityMatrix& d) {
  if (d.num_branches() < 2) throw ContractViolation("observability needs at least two branches");
  const double lo = d.min_off_diagonal();
  if (lo > 0.0) return 1.0 / lo;
  // A zero minimum with some nonzero entry still leaves an indistinguishable pair.
  if (d.accumulated.cwiseAbs().maxCoeff() == 0.0) return std::nullopt;
  return std::numeric_limits<double>::infinity();
}

struct EntropyReport {
  // Upper bounds in bits, counting the halting qubit once; they are only
  // reached when the per-step bounds saturate.
  double bound_shallow_bits = 0.0;
  double bound_deep_bits = 0.0;
  double l_d = 0.0;
  double l_d_asymptotic = 0.0;
  /// Observability threshold on gamma; nullopt when unobservable.
  std::optional<double> gamma_min;
};

inline EntropyReport entropy_bounds(int m, int n, int t_steps) {
  if (m < 1 || n < 1 || t_steps < 1) {
    throw ConfigError("entropy_bounds requires m, n, T >= 1");
  }
  EntropyReport r;
  r.bound_shallow_bits = static_cast<double>(t_steps) * n + 1.0;
  r.bound_deep_bits = static_cast<double>(t_steps) * (m + n) + 1.0;
  r.l_d = r.bound_deep_bits / r.bound_shallow_bits;
  r.l_d_asymptotic = 1.0 + m / (n + 1.0 / t_steps);
  return r;
}

inline EntropyReport entropy_report(int m, int n, int t_steps, const DistinguishabilityMatrix& d) {
  EntropyReport r = entropy_bounds(m, n, t_steps);
  r.gamma_min = observability_threshold(d);
  return r;
}

/// Entropy (bits) of the environment state sum_ij alpha_i alpha_j* |E_i><E_j|
/// under the overlap model, with amplitude overlaps taken as the positive
/// root exp(-gamma * D_ij / 2) of the modeled squared overlap and D summed
/// through step t.
inline double effective_environment_entropy(std::span<const Complex> alphas,
                                            const DistinguishabilityMatrix& d, double gamma,
                                            int t) {
  if (!(gamma >= 0.0)) throw ContractViolation("gamma must be non-negative");
  if (static_cast<int>(alphas.size()) != d.num_branches()) {
    throw ContractViolation("amplitude count does not match the distinguishability matrix");
  }
  const Eigen::MatrixXd acc = d.accumulated_through(t);
  const auto b = static_cast<Eigen::Index>(alphas.size());
  Eigen::MatrixXcd a(b, b);
  for (Eigen::Index i = 0; i < b; ++i) {
    for (Eigen::Index j = 0; j < b; ++j) {
      const double g = std::exp(-gamma * acc(i, j) / 2.0);
      a(i, j) = alphas[static_cast<std::size_t>(i)] * std::conj(alphas[static_cast<std::size_t>(j)]) * g;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a, Eigen::EigenvaluesOnly);
  Eigen::VectorXd ev = solver.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] < -kClampTolerance) {
      throw NumericalError("environment Gram matrix is not positive semidefinite (eigenvalue " +
                           std::to_string(ev[i]) + ")");
    }
    if (ev[i] < 0.0) ev[i] = 0.0;
  }
  return shannon_entropy_bits(ev);
}

}  // namespace logdepth
