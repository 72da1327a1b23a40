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

// Single-ancilla witness of branching structure.
//
// The ancilla starts in (|0> + |1>)/sqrt(2) and is never reset. Two models:
//
//  * semiclassical: at every step branch i adds phi * sum_k <Z_k>_i to the
//    relative phase of the ancilla, so branch i leaves it in
//    (|0> + e^{i Phi_i}|1>)/sqrt(2) and the reduced state is the mixture
//    sum_i |alpha_i|^2 |anc_i><anc_i|.
//  * full_unitary: the joint control (x) data (x) ancilla register is
//    simulated with a C-PHASE(phi) from every data qubit to the ancilla after
//    each step. The ancilla then also entangles with data superpositions, so
//    the shallow purity generally drops below 1 as well.

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "logdepth/circuit.hpp"
#include "logdepth/decoherence.hpp"
#include "logdepth/errors.hpp"
#include "logdepth/simulation.hpp"
#include "logdepth/statevector.hpp"

namespace logdepth {

enum class WitnessModel { Semiclassical, FullUnitary };

constexpr std::string_view witness_model_name(WitnessModel m) {
  return m == WitnessModel::Semiclassical ? "semiclassical" : "full-unitary";
}

inline std::optional<WitnessModel> parse_witness_model(std::string_view s) {
  if (s == "semiclassical") return WitnessModel::Semiclassical;
  if (s == "full-unitary" || s == "full_unitary") return WitnessModel::FullUnitary;
  return std::nullopt;
}

struct WitnessConfig {
  double phi = 0.5;
  WitnessModel model = WitnessModel::Semiclassical;
};

struct WitnessResult {
  WitnessModel model = WitnessModel::Semiclassical;
  double phi = 0.0;
  /// Semiclassical accumulated phase per deep branch.
  std::vector<double> branch_phases;
  /// Semiclassical accumulated phase of the shallow path (shared by all branches).
  double shallow_phase = 0.0;
  double purity_deep = 1.0;
  double purity_shallow = 1.0;
  /// 1/sqrt(min accumulated D); nullopt when branches are indistinguishable.
  std::optional<double> phi_threshold;
  bool observable = false;
};

/// Phi = phi * sum_t sum_k <Z_k>^(t).
inline double branch_phase(const BranchTrace& trace, double phi) {
  if (!(phi >= 0.0)) throw ContractViolation("phi must be non-negative");
  double total = 0.0;
  for (const auto& step : trace.z_expectations) {
    for (double z : step) total += z;
  }
  return phi * total;
}

/// Tr(rho^2) for rho = sum_i |alpha_i|^2 |anc_i><anc_i|, which reduces to
/// sum_ij |alpha_i|^2 |alpha_j|^2 cos^2((Phi_i - Phi_j) / 2).
inline double witness_purity_semiclassical(std::span<const double> phases,
                                           std::span<const Complex> alphas) {
  if (phases.size() != alphas.size()) {
    throw ContractViolation("phase and amplitude counts differ");
  }
  double p = 0.0;
  for (std::size_t i = 0; i < phases.size(); ++i) {
    const double wi = std::norm(alphas[i]);
    for (std::size_t j = 0; j < phases.size(); ++j) {
      const double c = std::cos((phases[i] - phases[j]) / 2.0);
      p += wi * std::norm(alphas[j]) * c * c;
    }
  }
  return p;
}

inline std::optional<double> witness_threshold(const DistinguishabilityMatrix& d) {
  if (d.num_branches() < 2) throw ContractViolation("witness threshold needs at least two branches");
  const double lo = d.min_off_diagonal();
  if (lo > 0.0) return 1.0 / std::sqrt(lo);
  if (d.accumulated.cwiseAbs().maxCoeff() == 0.0) return std::nullopt;
  return std::numeric_limits<double>::infinity();
}

namespace detail {

inline void check_full_unitary_size(const CircuitPair& pair) {
  const int total = pair.m + pair.n + 1;
  if (total > kMaxQubits) {
    throw ConfigError("full-unitary witness needs " + std::to_string(total) +
                      " qubits; the limit is " + std::to_string(kMaxQubits));
  }
}

// Qubit layout: control 0..m-1, data m..m+n-1, ancilla m+n.
inline double full_unitary_purity(const CircuitPair& pair, double phi, bool deep) {
  check_full_unitary_size(pair);
  const int total = pair.m + pair.n + 1;
  const std::size_t branches = pair.num_branches();
  const int data_shift = pair.n + 1;
  std::vector<Complex> amps(std::size_t{1} << total, Complex(0.0, 0.0));
  const double s2 = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < branches; ++i) {
    amps[i << data_shift] = pair.control_amplitudes[i] * s2;
    amps[(i << data_shift) | 1u] = pair.control_amplitudes[i] * s2;
  }
  PureState state = PureState::from_amplitudes(total, std::move(amps));

  const std::size_t control_mask = (branches - 1) << data_shift;
  const int ancilla = pair.m + pair.n;
  for (int t = 0; t < pair.t_steps; ++t) {
    if (deep) {
      for (std::size_t i = 0; i < branches; ++i) {
        const GateOp& g = pair.deep_branches[i].steps[static_cast<std::size_t>(t)];
        state.apply_controlled(shifted(g, pair.m), control_mask, i << data_shift);
      }
    } else {
      state.apply(shifted(pair.shallow.steps[static_cast<std::size_t>(t)], pair.m));
    }
    for (int k = 0; k < pair.n; ++k) state.apply(GateOp::cphase(pair.m + k, ancilla, phi));
  }
  return purity(reduced_density(state, {ancilla}));
}

}  // namespace detail

inline WitnessResult run_witness(const CircuitPair& pair, const PairTrace& trace,
                                 const WitnessConfig& config) {
  if (!(config.phi >= 0.0) || !std::isfinite(config.phi)) {
    throw ContractViolation("phi must be finite and non-negative");
  }
  WitnessResult r;
  r.model = config.model;
  r.phi = config.phi;
  for (const BranchTrace& b : trace.deep) r.branch_phases.push_back(branch_phase(b, config.phi));
  r.shallow_phase = branch_phase(trace.shallow, config.phi);

  if (config.model == WitnessModel::Semiclassical) {
    const std::vector<double> shallow_phases(r.branch_phases.size(), r.shallow_phase);
    r.purity_deep = witness_purity_semiclassical(r.branch_phases, pair.control_amplitudes);
    r.purity_shallow = witness_purity_semiclassical(shallow_phases, pair.control_amplitudes);
  } else {
    r.purity_deep = detail::full_unitary_purity(pair, config.phi, true);
    r.purity_shallow = detail::full_unitary_purity(pair, config.phi, false);
  }

  const DistinguishabilityMatrix d = distinguishability(trace);
  r.phi_threshold = witness_threshold(d);
  r.observable = config.phi * config.phi * d.min_off_diagonal() >= 1.0;
  return r;
}

inline WitnessResult run_witness(const CircuitPair& pair, const WitnessConfig& config) {
  if (config.model == WitnessModel::FullUnitary) detail::check_full_unitary_size(pair);
  return run_witness(pair, simulate_pair(pair), config);
}

}  // namespace logdepth
