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

// Step-by-step evolution of each deep branch and the shallow path.
//
// The control register is never materialized: the deep unitaries are block
// diagonal in the control basis, so each branch is evolved on its own n-qubit
// register and recombined with the |alpha_i|^2 weights.

#include <cstddef>
#include <vector>

#include "logdepth/circuit.hpp"
#include "logdepth/statevector.hpp"

namespace logdepth {

struct BranchTrace {
  int branch_index = 0;
  /// states[0] is |0...0>; states[t] follows the t-th gate.
  std::vector<PureState> states;
  /// z_expectations[t - 1][k] = <Z_k> after the t-th gate.
  std::vector<std::vector<double>> z_expectations;

  int steps() const { return static_cast<int>(z_expectations.size()); }
  const PureState& final_state() const { return states.back(); }
};

struct PairTrace {
  std::vector<BranchTrace> deep;
  BranchTrace shallow;
  std::vector<double> per_branch_p_halt;
  double p_halt_deep = 0.0;
  double p_halt_shallow = 0.0;
};

inline BranchTrace run_branch(const BranchProgram& program, int n, int branch_index = 0) {
  BranchTrace trace;
  trace.branch_index = branch_index;
  trace.states.reserve(program.size() + 1);
  trace.z_expectations.reserve(program.size());
  PureState state = zero_state(n);
  trace.states.push_back(state);
  for (const GateOp& gate : program.steps) {
    state.apply(gate);
    trace.z_expectations.push_back(expectations_z(state));
    trace.states.push_back(state);
  }
  return trace;
}

/// sum_i |alpha_i|^2 <phi|Pi_i|phi> for a state shared by all branches.
inline double shared_halting_probability(const CircuitPair& pair, const PureState& state) {
  double p = 0.0;
  for (std::size_t i = 0; i < pair.num_branches(); ++i) {
    const HaltingProjector& proj = pair.halting.for_branch(i);
    p += std::norm(pair.control_amplitudes[i]) * projector_probability(state, proj.qubit, proj.value);
  }
  return p;
}

inline PairTrace simulate_pair(const CircuitPair& pair) {
  PairTrace out;
  const std::size_t branches = pair.num_branches();
  out.deep.reserve(branches);
  for (std::size_t i = 0; i < branches; ++i) {
    out.deep.push_back(run_branch(pair.deep_branches[i], pair.n, static_cast<int>(i)));
    const HaltingProjector& proj = pair.halting.for_branch(i);
    const double p = projector_probability(out.deep.back().final_state(), proj.qubit, proj.value);
    out.per_branch_p_halt.push_back(p);
    out.p_halt_deep += std::norm(pair.control_amplitudes[i]) * p;
  }
  out.shallow = run_branch(pair.shallow, pair.n);
  out.p_halt_shallow = shared_halting_probability(pair, out.shallow.final_state());
  return out;
}

}  // namespace logdepth
