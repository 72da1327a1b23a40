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

// Deep/shallow circuit pairs: representation, validation, complexity
// matching, the reference four-branch example and a seeded generator.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "logdepth/errors.hpp"
#include "logdepth/statevector.hpp"

namespace logdepth {

inline constexpr int kMaxControlQubits = 16;
inline constexpr int kMaxSteps = 4096;

/// The per-step gate sequence of one computational path.
struct BranchProgram {
  std::vector<GateOp> steps;

  std::size_t size() const { return steps.size(); }
  bool operator==(const BranchProgram&) const = default;
};

/// Single-qubit halting projector |value><value| on a data qubit.
struct HaltingProjector {
  int qubit = 0;
  int value = 0;
  bool operator==(const HaltingProjector&) const = default;
};

/// Either one projector shared by all branches (`uniform`), or one per branch.
struct HaltingSpec {
  bool uniform = true;
  std::vector<HaltingProjector> projectors;

  static HaltingSpec shared(HaltingProjector p) { return {true, {p}}; }
  static HaltingSpec per_branch(std::vector<HaltingProjector> ps) {
    return {false, std::move(ps)};
  }

  const HaltingProjector& for_branch(std::size_t branch) const {
    return uniform ? projectors.at(0) : projectors.at(branch);
  }
  bool operator==(const HaltingSpec&) const = default;
};

struct CircuitPair {
  int m = 0;        // control qubits
  int n = 0;        // data qubits
  int t_steps = 0;  // steps per path
  std::vector<Complex> control_amplitudes;
  std::vector<BranchProgram> deep_branches;
  BranchProgram shallow;
  HaltingSpec halting;

  std::size_t num_branches() const { return std::size_t{1} << m; }
  bool operator==(const CircuitPair&) const = default;
};

/// Checks every CircuitPair invariant. Throws ValidationError naming the
/// violated rule.
inline void validate(const CircuitPair& pair) {
  if (pair.m < 1 || pair.m > kMaxControlQubits) {
    throw ValidationError("control register size",
                          "m = " + std::to_string(pair.m) + " outside [1, " +
                              std::to_string(kMaxControlQubits) + "]");
  }
  if (pair.n < 1 || pair.n > kMaxQubits) {
    throw ValidationError("data register size",
                          "n = " + std::to_string(pair.n) + " outside [1, " +
                              std::to_string(kMaxQubits) + "]");
  }
  if (pair.t_steps < 1 || pair.t_steps > kMaxSteps) {
    throw ValidationError("step count", "t_steps = " + std::to_string(pair.t_steps) +
                                            " outside [1, " + std::to_string(kMaxSteps) + "]");
  }
  const std::size_t branches = pair.num_branches();
  if (pair.control_amplitudes.size() != branches) {
    throw ValidationError("amplitude count",
                          "expected " + std::to_string(branches) + ", got " +
                              std::to_string(pair.control_amplitudes.size()));
  }
  double norm = 0.0;
  for (const Complex& a : pair.control_amplitudes) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw ValidationError("amplitude normalization", "non-finite amplitude");
    }
    norm += std::norm(a);
  }
  if (std::abs(norm - 1.0) > kStateTolerance) {
    throw ValidationError("amplitude normalization",
                          "sum of |alpha|^2 is " + std::to_string(norm));
  }
  if (pair.deep_branches.size() != branches) {
    throw ValidationError("branch count", "expected " + std::to_string(branches) +
                                              " deep branches for m = " + std::to_string(pair.m) +
                                              ", got " + std::to_string(pair.deep_branches.size()));
  }

  const auto check_program = [&](const BranchProgram& prog, const std::string& label) {
    if (prog.size() != static_cast<std::size_t>(pair.t_steps)) {
      throw ValidationError(label == "shallow" ? "shallow length" : "branch length",
                            label + " has " + std::to_string(prog.size()) +
                                " steps, expected " + std::to_string(pair.t_steps));
    }
    for (std::size_t s = 0; s < prog.size(); ++s) {
      const GateOp& g = prog.steps[s];
      const std::string where = label + " step " + std::to_string(s + 1);
      for (int q : g.qubits()) {
        if (q < 0 || q >= pair.n) {
          throw ValidationError("gate qubit index", where + " targets qubit " +
                                                        std::to_string(q) + " but n = " +
                                                        std::to_string(pair.n));
        }
      }
      if (g.arity() == 2 && g.targets[0] == g.targets[1]) {
        throw ValidationError("gate qubit distinct", where + " repeats qubit " +
                                                         std::to_string(g.targets[0]));
      }
      if (!std::isfinite(g.angle)) {
        throw ValidationError("gate angle", where + " has a non-finite angle");
      }
    }
  };
  for (std::size_t i = 0; i < branches; ++i) {
    check_program(pair.deep_branches[i], "branch " + std::to_string(i));
  }
  check_program(pair.shallow, "shallow");

  const std::size_t expected_projectors = pair.halting.uniform ? 1 : branches;
  if (pair.halting.projectors.size() != expected_projectors) {
    throw ValidationError("halting count", "expected " + std::to_string(expected_projectors) +
                                               " projectors, got " +
                                               std::to_string(pair.halting.projectors.size()));
  }
  for (const HaltingProjector& p : pair.halting.projectors) {
    if (p.qubit < 0 || p.qubit >= pair.n) {
      throw ValidationError("halting qubit", "projector qubit " + std::to_string(p.qubit) +
                                                 " not below n = " + std::to_string(pair.n));
    }
    if (p.value != 0 && p.value != 1) {
      throw ValidationError("halting value", "projector value must be 0 or 1");
    }
  }
}

struct ComplexityProfile {
  int single_qubit_count = 0;
  int two_qubit_count = 0;
  int depth = 0;
  bool operator==(const ComplexityProfile&) const = default;
};

/// Gate counts by arity. Angles do not distinguish profiles, so RZ(pi/4)
/// counts like any other single-qubit gate.
inline ComplexityProfile complexity_profile(const BranchProgram& program) {
  ComplexityProfile p;
  for (const GateOp& g : program.steps) {
    (g.arity() == 2 ? p.two_qubit_count : p.single_qubit_count) += 1;
  }
  p.depth = static_cast<int>(program.size());
  return p;
}

struct MatchingReport {
  std::vector<ComplexityProfile> branch_profiles;
  ComplexityProfile shallow_profile;
  bool matched = false;
  /// Branches whose profile differs from the shallow path's.
  std::vector<int> mismatched_branches;
};

inline MatchingReport validate_matching(const CircuitPair& pair) {
  MatchingReport report;
  report.shallow_profile = complexity_profile(pair.shallow);
  for (std::size_t i = 0; i < pair.deep_branches.size(); ++i) {
    report.branch_profiles.push_back(complexity_profile(pair.deep_branches[i]));
    if (report.branch_profiles.back() != report.shallow_profile) {
      report.mismatched_branches.push_back(static_cast<int>(i));
    }
  }
  report.matched = report.mismatched_branches.empty();
  return report;
}

/// The shallow path's final gate, if it is the RY steering rotation.
inline const GateOp* steering_gate(const CircuitPair& pair) {
  if (pair.shallow.steps.empty() || pair.shallow.steps.back().kind != GateKind::RY) {
    return nullptr;
  }
  return &pair.shallow.steps.back();
}

/// Copy of `pair` with the shallow steering angle set to `theta`.
inline CircuitPair with_steering_angle(CircuitPair pair, double theta) {
  if (steering_gate(pair) == nullptr) {
    throw ContractViolation("shallow program does not end in an RY steering gate");
  }
  pair.shallow.steps.back().angle = theta;
  return pair;
}

/// Four-branch reference pair: m = 2, n = 3, T = 4, uniform amplitudes,
/// halting projector |0><0| on data qubit 2. The shallow steering angle is
/// preset to the value that equalizes halting probabilities (3/8).
inline CircuitPair paper_example() {
  using std::numbers::pi;
  CircuitPair pair;
  pair.m = 2;
  pair.n = 3;
  pair.t_steps = 4;
  pair.control_amplitudes.assign(4, Complex(0.5, 0.0));
  pair.deep_branches = {
      {{GateOp::h(0), GateOp::x(1), GateOp::cnot(0, 2), GateOp::rz(1, pi / 4)}},
      {{GateOp::h(1), GateOp::x(0), GateOp::cnot(1, 2), GateOp::rz(0, pi / 3)}},
      {{GateOp::h(2), GateOp::x(0), GateOp::cnot(0, 1), GateOp::rz(2, pi / 2)}},
      {{GateOp::h(0), GateOp::x(2), GateOp::cnot(1, 0), GateOp::rz(1, pi / 6)}},
  };
  const double theta = 2.0 * std::acos(std::sqrt(0.375));
  pair.shallow = {{GateOp::h(0), GateOp::x(1), GateOp::cnot(0, 1), GateOp::ry(2, theta)}};
  pair.halting = HaltingSpec::shared({2, 0});
  return pair;
}

namespace detail {

// Explicit reductions of raw engine output keep generated documents identical
// across standard library implementations.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}
  int below(int bound) {
    return static_cast<int>(engine_() % static_cast<std::uint64_t>(bound));
  }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Two distinct qubits out of `n`.
  std::pair<int, int> distinct_pair(int n) {
    const int a = below(n);
    int b = below(n - 1);
    if (b >= a) ++b;
    return {a, b};
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace detail

/// Seeded random pair over the gate set {H, RZ(pi/4), CNOT}.
///
/// Every path shares one arity template (which steps are CNOTs), so all
/// complexity profiles agree; the final step is always single-qubit. The
/// shallow path ends with RY(0) on the halting qubit and never rotates that
/// qubit out of |0> beforehand (it only appears as a CNOT control or under
/// RZ), so any deep halting probability is reachable by the steering angle.
inline CircuitPair generate_matched_pair(std::uint64_t seed, int m, int n, int t_steps) {
  if (m < 1 || m > kMaxControlQubits) {
    throw ConfigError("generate: m must be in [1, " + std::to_string(kMaxControlQubits) + "]");
  }
  if (n < 2 || n > kMaxQubits) {
    throw ConfigError("generate: n must be in [2, " + std::to_string(kMaxQubits) + "]");
  }
  if (t_steps < 2 || t_steps > kMaxSteps) {
    throw ConfigError("generate: t must be in [2, " + std::to_string(kMaxSteps) + "]");
  }
  constexpr double kTPhase = std::numbers::pi / 4;
  detail::PortableRng rng(seed);

  CircuitPair pair;
  pair.m = m;
  pair.n = n;
  pair.t_steps = t_steps;
  const int halting_qubit = rng.below(n);
  pair.halting = HaltingSpec::shared({halting_qubit, 0});

  std::vector<bool> entangling(static_cast<std::size_t>(t_steps), false);
  for (int s = 0; s + 1 < t_steps; ++s) entangling[static_cast<std::size_t>(s)] = rng.below(3) == 0;

  const std::size_t branches = pair.num_branches();
  std::vector<double> weights(branches);
  double total = 0.0;
  for (double& w : weights) {
    w = 0.1 + 0.9 * rng.unit();
    total += w;
  }
  for (double w : weights) pair.control_amplitudes.emplace_back(std::sqrt(w / total), 0.0);

  for (std::size_t i = 0; i < branches; ++i) {
    BranchProgram prog;
    for (int s = 0; s < t_steps; ++s) {
      if (entangling[static_cast<std::size_t>(s)]) {
        const auto [c, t] = rng.distinct_pair(n);
        prog.steps.push_back(GateOp::cnot(c, t));
      } else {
        const int q = rng.below(n);
        prog.steps.push_back(rng.below(2) == 0 ? GateOp::h(q) : GateOp::rz(q, kTPhase));
      }
    }
    pair.deep_branches.push_back(std::move(prog));
  }

  for (int s = 0; s + 1 < t_steps; ++s) {
    if (entangling[static_cast<std::size_t>(s)]) {
      // Target is any qubit except the halting one.
      int t = rng.below(n - 1);
      if (t >= halting_qubit) ++t;
      int c = rng.below(n - 1);
      if (c >= t) ++c;
      pair.shallow.steps.push_back(GateOp::cnot(c, t));
    } else {
      const int q = rng.below(n);
      const bool hadamard = q != halting_qubit && rng.below(2) == 0;
      pair.shallow.steps.push_back(hadamard ? GateOp::h(q) : GateOp::rz(q, kTPhase));
    }
  }
  pair.shallow.steps.push_back(GateOp::ry(halting_qubit, 0.0));
  return pair;
}

}  // namespace logdepth
