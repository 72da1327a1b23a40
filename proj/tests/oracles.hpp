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

// Test-only reference computations. Everything here goes through explicit
// dense matrices and never calls PureState::apply, so it stays independent of
// the code paths it checks.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "logdepth/circuit.hpp"
#include "logdepth/statevector.hpp"

namespace logdepth::oracle {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Mat identity(Eigen::Index dim) { return Mat::Identity(dim, dim); }

inline Mat m2(Complex a, Complex b, Complex c, Complex d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

inline Mat pauli_z() { return m2(1, 0, 0, -1); }
inline Mat proj0() { return m2(1, 0, 0, 0); }
inline Mat proj1() { return m2(0, 0, 0, 1); }

/// Embeds a list of single-qubit factors (nullptr-like identity elsewhere)
/// into an n-qubit operator, qubit 0 leftmost.
inline Mat embed(const std::vector<std::pair<int, Mat>>& factors, int n) {
  Mat out = identity(1);
  for (int q = 0; q < n; ++q) {
    Mat f = identity(2);
    for (const auto& [qq, m] : factors) {
      if (qq == q) f = m;
    }
    out = kron(out, f);
  }
  return out;
}

inline Mat gate_matrix(const GateOp& g, int n) {
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  const int a = g.targets[0];
  const int b = g.targets[1];
  switch (g.kind) {
    case GateKind::H: return embed({{a, m2(r, r, r, -r)}}, n);
    case GateKind::X: return embed({{a, m2(0, 1, 1, 0)}}, n);
    case GateKind::Z: return embed({{a, pauli_z()}}, n);
    case GateKind::RZ:
      return embed({{a, m2(std::exp(-i * g.angle / 2.0), 0, 0, std::exp(i * g.angle / 2.0))}}, n);
    case GateKind::RY: {
      const double c = std::cos(g.angle / 2.0);
      const double s = std::sin(g.angle / 2.0);
      return embed({{a, m2(c, -s, s, c)}}, n);
    }
    case GateKind::CNOT:
      return embed({{a, proj0()}}, n) + embed({{a, proj1()}, {b, m2(0, 1, 1, 0)}}, n);
    case GateKind::CPHASE:
      return identity(Eigen::Index{1} << n) +
             (std::exp(i * g.angle) - 1.0) * embed({{a, proj1()}, {b, proj1()}}, n);
  }
  return {};
}

inline Vec to_vec(const PureState& s) {
  Vec v(static_cast<Eigen::Index>(s.dimension()));
  for (std::size_t k = 0; k < s.dimension(); ++k) v[static_cast<Eigen::Index>(k)] = s.amplitude(k);
  return v;
}

/// Reduced density matrix by summing over every pair of basis states that
/// agree on the traced qubits.
inline Mat brute_force_partial_trace(const PureState& s, const std::vector<int>& keep) {
  const int n = s.num_qubits();
  const auto bit = [n](std::size_t b, int q) { return (b >> (n - 1 - q)) & 1u; };
  const auto kept_index = [&](std::size_t b) {
    std::size_t k = 0;
    for (int q : keep) k = (k << 1) | bit(b, q);
    return k;
  };
  Mat rho = Mat::Zero(Eigen::Index{1} << keep.size(), Eigen::Index{1} << keep.size());
  for (std::size_t x = 0; x < s.dimension(); ++x) {
    for (std::size_t y = 0; y < s.dimension(); ++y) {
      bool same = true;
      for (int q = 0; q < n; ++q) {
        bool kept = false;
        for (int k : keep) kept = kept || k == q;
        if (!kept && bit(x, q) != bit(y, q)) same = false;
      }
      if (same) {
        rho(static_cast<Eigen::Index>(kept_index(x)), static_cast<Eigen::Index>(kept_index(y))) +=
            s.amplitude(x) * std::conj(s.amplitude(y));
      }
    }
  }
  return rho;
}

/// Control (x) data joint simulation with explicit controlled unitaries.
struct JointResult {
  /// z[branch][step][qubit], conditional on the control register being |branch>.
  std::vector<std::vector<std::vector<double>>> deep_z;
  std::vector<std::vector<double>> shallow_z;
  double p_halt_deep = 0.0;
  double p_halt_shallow = 0.0;
};

inline JointResult joint_simulation(const CircuitPair& pair) {
  const Eigen::Index branches = Eigen::Index{1} << pair.m;
  const Eigen::Index data_dim = Eigen::Index{1} << pair.n;

  Vec init = Vec::Zero(branches * data_dim);
  for (Eigen::Index i = 0; i < branches; ++i) init[i * data_dim] = pair.control_amplitudes[static_cast<std::size_t>(i)];

  const auto control_projector = [&](Eigen::Index i) {
    Mat p = Mat::Zero(branches, branches);
    p(i, i) = 1.0;
    return p;
  };
  const auto conditional_z = [&](const Vec& psi) {
    std::vector<std::vector<double>> out;
    for (Eigen::Index i = 0; i < branches; ++i) {
      const Mat proj = kron(control_projector(i), identity(data_dim));
      const double weight = (psi.adjoint() * proj * psi)(0, 0).real();
      std::vector<double> z;
      for (int k = 0; k < pair.n; ++k) {
        const Mat zk = kron(control_projector(i), embed({{k, pauli_z()}}, pair.n));
        z.push_back((psi.adjoint() * zk * psi)(0, 0).real() / weight);
      }
      out.push_back(std::move(z));
    }
    return out;
  };
  const auto halting = [&](const Vec& psi) {
    double p = 0.0;
    for (Eigen::Index i = 0; i < branches; ++i) {
      const HaltingProjector& h = pair.halting.for_branch(static_cast<std::size_t>(i));
      const Mat op = kron(control_projector(i), embed({{h.qubit, h.value == 0 ? proj0() : proj1()}}, pair.n));
      p += (psi.adjoint() * op * psi)(0, 0).real();
    }
    return p;
  };

  JointResult r;
  r.deep_z.assign(static_cast<std::size_t>(branches), {});
  Vec deep = init;
  Vec shallow = init;
  for (int t = 0; t < pair.t_steps; ++t) {
    Mat u = Mat::Zero(branches * data_dim, branches * data_dim);
    for (Eigen::Index i = 0; i < branches; ++i) {
      u += kron(control_projector(i),
                gate_matrix(pair.deep_branches[static_cast<std::size_t>(i)].steps[static_cast<std::size_t>(t)], pair.n));
    }
    deep = u * deep;
    shallow = kron(identity(branches), gate_matrix(pair.shallow.steps[static_cast<std::size_t>(t)], pair.n)) * shallow;
    const auto dz = conditional_z(deep);
    for (Eigen::Index i = 0; i < branches; ++i) r.deep_z[static_cast<std::size_t>(i)].push_back(dz[static_cast<std::size_t>(i)]);
    r.shallow_z.push_back(conditional_z(shallow)[0]);
  }
  r.p_halt_deep = halting(deep);
  r.p_halt_shallow = halting(shallow);
  return r;
}

/// Tr(rho^2) of sum_i w_i |anc_i><anc_i| with |anc_i> = (|0> + e^{i Phi_i}|1>)/sqrt(2),
/// built explicitly.
inline double brute_force_ancilla_purity(const std::vector<double>& phases,
                                         const std::vector<Complex>& alphas) {
  Mat rho = Mat::Zero(2, 2);
  for (std::size_t i = 0; i < phases.size(); ++i) {
    Vec ket(2);
    ket << 1.0 / std::sqrt(2.0), std::polar(1.0 / std::sqrt(2.0), phases[i]);
    rho += std::norm(alphas[i]) * ket * ket.adjoint();
  }
  return (rho * rho).trace().real();
}

inline PureState random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Complex> amps(std::size_t{1} << n);
  double norm = 0.0;
  for (auto& a : amps) {
    a = Complex(g(rng), g(rng));
    norm += std::norm(a);
  }
  for (auto& a : amps) a /= std::sqrt(norm);
  return PureState::from_amplitudes(n, std::move(amps));
}

inline GateOp random_gate(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, static_cast<int>(kAllGateKinds.size()) - 1);
  std::uniform_int_distribution<int> qubit(0, n - 1);
  std::uniform_real_distribution<double> angle(-6.3, 6.3);
  GateOp g;
  g.kind = kAllGateKinds[static_cast<std::size_t>(kind(rng))];
  if (g.arity() == 2 && n < 2) g.kind = GateKind::H;
  g.targets[0] = qubit(rng);
  if (g.arity() == 2) {
    do {
      g.targets[1] = qubit(rng);
    } while (g.targets[1] == g.targets[0]);
  }
  if (gate_has_angle(g.kind)) g.angle = angle(rng);
  return g;
}

}  // namespace logdepth::oracle
