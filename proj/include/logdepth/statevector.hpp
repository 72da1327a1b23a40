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

// Exact pure-state simulation of small qubit registers.
//
// Basis convention: for an n-qubit register written |q0 q1 ... q(n-1)>, the
// basis index is q0*2^(n-1) + q1*2^(n-2) + ... + q(n-1). Qubit 0 is the most
// significant bit.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "logdepth/errors.hpp"

namespace logdepth {

using Complex = std::complex<double>;

inline constexpr int kMaxQubits = 24;
inline constexpr double kStateTolerance = 1e-10;
inline constexpr double kEigenTolerance = 1e-8;
// Eigenvalues in [-kClampTolerance, 0) are treated as zero.
inline constexpr double kClampTolerance = 1e-10;
// Eigenvalues below this contribute nothing to an entropy.
inline constexpr double kEntropyCutoff = 1e-12;
// Largest subsystem reduced_density will materialize.
inline constexpr int kMaxReducedQubits = 10;

enum class GateKind { H, X, Z, RZ, RY, CNOT, CPHASE };

inline constexpr std::array<GateKind, 7> kAllGateKinds = {
    GateKind::H,  GateKind::X,    GateKind::Z,     GateKind::RZ,
    GateKind::RY, GateKind::CNOT, GateKind::CPHASE};

constexpr std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Z: return "Z";
    case GateKind::RZ: return "RZ";
    case GateKind::RY: return "RY";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CPHASE: return "CPHASE";
  }
  return "?";
}

inline std::optional<GateKind> parse_gate_kind(std::string_view name) {
  for (GateKind k : kAllGateKinds) {
    if (gate_name(k) == name) return k;
  }
  return std::nullopt;
}

constexpr int gate_arity(GateKind kind) {
  return (kind == GateKind::CNOT || kind == GateKind::CPHASE) ? 2 : 1;
}

constexpr bool gate_has_angle(GateKind kind) {
  return kind == GateKind::RZ || kind == GateKind::RY ||
         kind == GateKind::CPHASE;
}

/// A symbolic gate. For CNOT, targets[0] is the control and targets[1] the
/// target. Unused slots of single-qubit gates are kept at 0 so that equality
/// is structural.
struct GateOp {
  GateKind kind = GateKind::H;
  std::array<int, 2> targets{0, 0};
  double angle = 0.0;

  static GateOp h(int q) { return {GateKind::H, {q, 0}, 0.0}; }
  static GateOp x(int q) { return {GateKind::X, {q, 0}, 0.0}; }
  static GateOp z(int q) { return {GateKind::Z, {q, 0}, 0.0}; }
  static GateOp rz(int q, double theta) { return {GateKind::RZ, {q, 0}, theta}; }
  static GateOp ry(int q, double theta) { return {GateKind::RY, {q, 0}, theta}; }
  static GateOp cnot(int control, int target) {
    return {GateKind::CNOT, {control, target}, 0.0};
  }
  static GateOp cphase(int a, int b, double phi) {
    return {GateKind::CPHASE, {a, b}, phi};
  }

  int arity() const { return gate_arity(kind); }
  std::span<const int> qubits() const {
    return std::span<const int>(targets.data(), static_cast<std::size_t>(arity()));
  }

  bool operator==(const GateOp&) const = default;
};

/// Same gate with every qubit index shifted by `offset`.
inline GateOp shifted(GateOp gate, int offset) {
  for (int i = 0; i < gate.arity(); ++i) gate.targets[static_cast<std::size_t>(i)] += offset;
  return gate;
}

/// 2x2 matrix (row-major) of a single-qubit gate.
inline std::array<Complex, 4> single_qubit_matrix(const GateOp& gate) {
  const double s2 = 1.0 / std::sqrt(2.0);
  switch (gate.kind) {
    case GateKind::H: return {s2, s2, s2, -s2};
    case GateKind::X: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::Z: return {1.0, 0.0, 0.0, -1.0};
    case GateKind::RZ: {
      const double h = gate.angle / 2.0;
      return {Complex(std::cos(h), -std::sin(h)), 0.0, 0.0,
              Complex(std::cos(h), std::sin(h))};
    }
    case GateKind::RY: {
      const double c = std::cos(gate.angle / 2.0);
      const double s = std::sin(gate.angle / 2.0);
      return {c, -s, s, c};
    }
    default:
      throw ContractViolation("single_qubit_matrix: " +
                              std::string(gate_name(gate.kind)) +
                              " is not a single-qubit gate");
  }
}

class PureState {
 public:
  /// |0...0> on `num_qubits` qubits.
  static PureState zero(int num_qubits) {
    check_size(num_qubits);
    PureState s;
    s.num_qubits_ = num_qubits;
    s.amplitudes_.assign(std::size_t{1} << num_qubits, Complex(0.0, 0.0));
    s.amplitudes_[0] = 1.0;
    return s;
  }

  /// Wraps explicit amplitudes. Throws if the length is not 2^n or the
  /// vector is not normalized within kStateTolerance.
  static PureState from_amplitudes(int num_qubits, std::vector<Complex> amplitudes) {
    check_size(num_qubits);
    if (amplitudes.size() != (std::size_t{1} << num_qubits)) {
      throw ConfigError("PureState: expected " +
                        std::to_string(std::size_t{1} << num_qubits) +
                        " amplitudes, got " + std::to_string(amplitudes.size()));
    }
    PureState s;
    s.num_qubits_ = num_qubits;
    s.amplitudes_ = std::move(amplitudes);
    if (std::abs(s.norm_squared() - 1.0) > kStateTolerance) {
      throw ConfigError("PureState: amplitudes are not normalized");
    }
    return s;
  }

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  Complex amplitude(std::size_t index) const { return amplitudes_.at(index); }

  double norm_squared() const {
    double total = 0.0;
    for (const Complex& a : amplitudes_) total += std::norm(a);
    return total;
  }

  /// Bit mask of `qubit` in a basis index.
  std::size_t mask_of(int qubit) const {
    check_qubit(qubit);
    return std::size_t{1} << (num_qubits_ - 1 - qubit);
  }

  void check_qubit(int qubit) const {
    if (qubit < 0 || qubit >= num_qubits_) {
      throw ContractViolation("qubit index " + std::to_string(qubit) +
                              " out of range for a " +
                              std::to_string(num_qubits_) + "-qubit register");
    }
  }

  /// Applies `gate` in place.
  void apply(const GateOp& gate) { apply_controlled(gate, 0, 0); }

  /// Applies `gate` only on the basis subspace where
  /// (index & control_mask) == control_value. The result is the block-diagonal
  /// unitary |c><c| (x) U + (I - |c><c|) (x) I.
  void apply_controlled(const GateOp& gate, std::size_t control_mask,
                        std::size_t control_value) {
    if (!std::isfinite(gate.angle)) {
      throw ContractViolation("gate angle must be finite");
    }
    for (int q : gate.qubits()) check_qubit(q);
    if (gate.arity() == 2 && gate.targets[0] == gate.targets[1]) {
      throw ContractViolation("two-qubit gate needs distinct qubits");
    }
    for (int q : gate.qubits()) {
      if (mask_of(q) & control_mask) {
        throw ContractViolation("gate qubit overlaps its control condition");
      }
    }
    const auto active = [&](std::size_t b) { return (b & control_mask) == control_value; };
    const std::size_t dim = amplitudes_.size();

    switch (gate.kind) {
      case GateKind::CNOT: {
        const std::size_t c = mask_of(gate.targets[0]);
        const std::size_t t = mask_of(gate.targets[1]);
        for (std::size_t b = 0; b < dim; ++b) {
          if ((b & c) && !(b & t) && active(b)) std::swap(amplitudes_[b], amplitudes_[b | t]);
        }
        return;
      }
      case GateKind::CPHASE: {
        const std::size_t both = mask_of(gate.targets[0]) | mask_of(gate.targets[1]);
        const Complex phase = std::polar(1.0, gate.angle);
        for (std::size_t b = 0; b < dim; ++b) {
          if ((b & both) == both && active(b)) amplitudes_[b] *= phase;
        }
        return;
      }
      default: {
        const auto u = single_qubit_matrix(gate);
        const std::size_t t = mask_of(gate.targets[0]);
        for (std::size_t b = 0; b < dim; ++b) {
          if ((b & t) || !active(b)) continue;
          const Complex a0 = amplitudes_[b];
          const Complex a1 = amplitudes_[b | t];
          amplitudes_[b] = u[0] * a0 + u[1] * a1;
          amplitudes_[b | t] = u[2] * a0 + u[3] * a1;
        }
        return;
      }
    }
  }

  /// Multiplies every amplitude by a unit-modulus scalar.
  void apply_global_phase(double phase) {
    const Complex f = std::polar(1.0, phase);
    for (Complex& a : amplitudes_) a *= f;
  }

 private:
  static void check_size(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
      throw ConfigError("register size " + std::to_string(num_qubits) +
                        " outside [1, " + std::to_string(kMaxQubits) + "]");
    }
  }

  int num_qubits_ = 0;
  std::vector<Complex> amplitudes_;
};

inline PureState zero_state(int num_qubits) { return PureState::zero(num_qubits); }

inline PureState apply_gate(PureState state, const GateOp& gate) {
  state.apply(gate);
  return state;
}

// Measurement-style quantities divide by the computed norm so that round-off
// from 1/sqrt(2) factors does not leak into values that are exact in theory.

/// <Z_qubit> = sum_b |a_b|^2 * (+1 if bit is 0 else -1).
inline double expectation_z(const PureState& state, int qubit) {
  const std::size_t mask = state.mask_of(qubit);
  double plus = 0.0;
  double minus = 0.0;
  const auto amps = state.amplitudes();
  for (std::size_t b = 0; b < amps.size(); ++b) {
    ((b & mask) ? minus : plus) += std::norm(amps[b]);
  }
  return (plus - minus) / (plus + minus);
}

/// <Z_k> for every qubit k, in qubit order.
inline std::vector<double> expectations_z(const PureState& state) {
  std::vector<double> out(static_cast<std::size_t>(state.num_qubits()));
  for (int q = 0; q < state.num_qubits(); ++q) out[static_cast<std::size_t>(q)] = expectation_z(state, q);
  return out;
}

/// <psi| (|value><value|_qubit) |psi>.
inline double projector_probability(const PureState& state, int qubit, int value) {
  if (value != 0 && value != 1) {
    throw ContractViolation("projector value must be 0 or 1");
  }
  const std::size_t mask = state.mask_of(qubit);
  double hit = 0.0;
  double total = 0.0;
  const auto amps = state.amplitudes();
  for (std::size_t b = 0; b < amps.size(); ++b) {
    const double p = std::norm(amps[b]);
    total += p;
    if (((b & mask) != 0) == (value == 1)) hit += p;
  }
  return hit / total;
}

class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and positivity.
  static DensityMatrix from_matrix(Eigen::MatrixXcd entries) {
    if (entries.rows() == 0 || entries.rows() != entries.cols()) {
      throw ContractViolation("density matrix must be square and non-empty");
    }
    if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > kStateTolerance) {
      throw ContractViolation("density matrix is not Hermitian");
    }
    if (std::abs(entries.trace() - Complex(1.0, 0.0)) > kStateTolerance) {
      throw ContractViolation("density matrix trace is not 1");
    }
    DensityMatrix rho(std::move(entries));
    if (rho.eigenvalues().minCoeff() < -kClampTolerance) {
      throw ContractViolation("density matrix is not positive semidefinite");
    }
    return rho;
  }

  /// |psi><psi|.
  static DensityMatrix from_pure(const PureState& state) {
    const auto amps = state.amplitudes();
    Eigen::Map<const Eigen::VectorXcd> v(amps.data(), static_cast<Eigen::Index>(amps.size()));
    return DensityMatrix(v * v.adjoint());
  }

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  Complex operator()(int i, int j) const { return entries_(i, j); }

  /// Ascending real eigenvalues.
  Eigen::VectorXd eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
  }

 private:
  explicit DensityMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {}
  Eigen::MatrixXcd entries_;
};

/// Partial trace of |psi><psi| onto `keep`. Kept qubits are ordered by
/// ascending index, the lowest index being the most significant bit of the
/// reduced basis.
inline DensityMatrix reduced_density(const PureState& state, std::vector<int> keep) {
  if (keep.empty()) throw ContractViolation("reduced_density: empty keep set");
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end()) {
    throw ContractViolation("reduced_density: duplicate qubit in keep set");
  }
  for (int q : keep) state.check_qubit(q);
  if (static_cast<int>(keep.size()) > kMaxReducedQubits) {
    throw ConfigError("reduced_density: at most " + std::to_string(kMaxReducedQubits) +
                      " kept qubits");
  }

  std::vector<std::size_t> kept_masks;
  std::vector<std::size_t> traced_masks;
  for (int q = 0; q < state.num_qubits(); ++q) {
    (std::binary_search(keep.begin(), keep.end(), q) ? kept_masks : traced_masks)
        .push_back(state.mask_of(q));
  }
  // Pattern bit j (counting from the most significant) maps to masks[j].
  const auto scatter = [](std::size_t pattern, const std::vector<std::size_t>& masks) {
    std::size_t index = 0;
    const std::size_t width = masks.size();
    for (std::size_t j = 0; j < width; ++j) {
      if (pattern & (std::size_t{1} << (width - 1 - j))) index |= masks[j];
    }
    return index;
  };

  const std::size_t kdim = std::size_t{1} << kept_masks.size();
  const std::size_t tdim = std::size_t{1} << traced_masks.size();
  std::vector<std::size_t> kept_offsets(kdim);
  for (std::size_t k = 0; k < kdim; ++k) kept_offsets[k] = scatter(k, kept_masks);

  const auto amps = state.amplitudes();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(kdim),
                                                static_cast<Eigen::Index>(kdim));
  for (std::size_t e = 0; e < tdim; ++e) {
    const std::size_t base = scatter(e, traced_masks);
    for (std::size_t r = 0; r < kdim; ++r) {
      const Complex ar = amps[base | kept_offsets[r]];
      if (ar == Complex(0.0, 0.0)) continue;
      for (std::size_t c = 0; c < kdim; ++c) {
        rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) +=
            ar * std::conj(amps[base | kept_offsets[c]]);
      }
    }
  }
  rho /= rho.trace().real();
  return DensityMatrix::from_matrix(std::move(rho));
}

/// Tr(rho^2).
inline double purity(const DensityMatrix& rho) {
  return rho.entries().cwiseAbs2().sum();
}

/// Shannon entropy in bits of a probability vector; entries below
/// kEntropyCutoff contribute nothing.
inline double shannon_entropy_bits(const Eigen::VectorXd& probabilities) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < probabilities.size(); ++i) {
    const double p = probabilities[i];
    if (p > kEntropyCutoff) s -= p * std::log(p);
  }
  return s / std::log(2.0);
}

/// -Tr(rho log rho) in bits.
inline double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::VectorXd ev = rho.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] < 0.0 && ev[i] >= -kClampTolerance) ev[i] = 0.0;
  }
  return shannon_entropy_bits(ev);
}

}  // namespace logdepth
