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

#include "logdepth/witness.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "oracles.hpp"

namespace logdepth {
namespace {

// Closed-form purity for phases (0, 0, -1, +1) with uniform weights.
const double kExamplePurity =
    (4.0 + 2.0 * (1.0 + 4.0 * std::pow(std::cos(0.5), 2) + std::pow(std::cos(1.0), 2))) / 16.0;

TEST(BranchPhase, ExampleBranches) {
  const PairTrace t = simulate_pair(paper_example());
  EXPECT_EQ(branch_phase(t.deep[0], 0.5), 0.0);
  EXPECT_EQ(branch_phase(t.deep[1], 0.5), 0.0);
  EXPECT_EQ(branch_phase(t.deep[2], 0.5), -1.0);
  EXPECT_EQ(branch_phase(t.deep[3], 0.5), 1.0);
  EXPECT_EQ(branch_phase(t.deep[2], 0.0), 0.0);
  EXPECT_THROW(branch_phase(t.deep[0], -0.1), ContractViolation);
}

TEST(SemiclassicalPurity, Values) {
  const std::vector<Complex> uniform(4, 0.5);
  EXPECT_EQ(witness_purity_semiclassical(std::vector<double>{0.3, 0.3, 0.3, 0.3}, uniform), 1.0);
  const double p = witness_purity_semiclassical(std::vector<double>{0, 0, -1, 1}, uniform);
  EXPECT_NEAR(p, kExamplePurity, 1e-15);
  EXPECT_NEAR(p, 0.7966, 5e-5);
  EXPECT_EQ(witness_purity_semiclassical(std::vector<double>{0.0, 2.5}, std::vector<Complex>{1.0, 0.0}), 1.0);
}

TEST(SemiclassicalPurity, MatchesExplicitMixtureAndIsShiftInvariant) {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> ph(-5.0, 5.0);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t b = std::size_t{2} << (trial % 3);
    std::vector<double> phases(b);
    std::vector<Complex> alphas(b);
    double norm = 0.0;
    for (std::size_t i = 0; i < b; ++i) {
      phases[i] = ph(rng);
      alphas[i] = Complex(g(rng), g(rng));
      norm += std::norm(alphas[i]);
    }
    for (auto& a : alphas) a /= std::sqrt(norm);
    const double p = witness_purity_semiclassical(phases, alphas);
    EXPECT_NEAR(p, oracle::brute_force_ancilla_purity(phases, alphas), 1e-12);
    EXPECT_GE(p, 0.5 - 1e-12);
    EXPECT_LE(p, 1.0 + 1e-12);
    std::vector<double> shifted_phases = phases;
    const double c = ph(rng);
    for (double& x : shifted_phases) x += c;
    EXPECT_NEAR(witness_purity_semiclassical(shifted_phases, alphas), p, 1e-12);
  }
}

TEST(SemiclassicalPurity, MonotoneUpToFirstStationaryPoint) {
  const PairTrace t = simulate_pair(paper_example());
  const std::vector<Complex> alphas(4, 0.5);
  const auto purity_at = [&](double phi) {
    std::vector<double> phases;
    for (const auto& b : t.deep) phases.push_back(branch_phase(b, phi));
    return witness_purity_semiclassical(phases, alphas);
  };
  // Locate the first stationary point from the sign of a central difference.
  constexpr double kStep = 1e-4;
  double phi_star = 0.0;
  for (double phi = kStep; phi < 10.0; phi += kStep) {
    if (purity_at(phi + kStep) - purity_at(phi - kStep) > 0.0) {
      phi_star = phi;
      break;
    }
  }
  ASSERT_GT(phi_star, 0.5);
  double prev = purity_at(0.0);
  EXPECT_EQ(prev, 1.0);
  for (double phi = 0.01; phi <= phi_star - kStep; phi += 0.01) {
    const double p = purity_at(phi);
    EXPECT_LE(p, prev + 1e-15) << phi;
    prev = p;
  }
}

TEST(WitnessThreshold, Values) {
  const DistinguishabilityMatrix d = distinguishability(simulate_pair(paper_example()));
  EXPECT_NEAR(*witness_threshold(d), 1.0 / std::sqrt(6.0), 1e-15);
  EXPECT_NEAR(*witness_threshold(d), 0.4082, 5e-5);

  DistinguishabilityMatrix one;
  one.accumulated = Eigen::MatrixXd{{0.0, 1.0}, {1.0, 0.0}};
  one.per_step = {one.accumulated};
  EXPECT_EQ(*witness_threshold(one), 1.0);
  one.accumulated *= 4.0;
  EXPECT_EQ(*witness_threshold(one), 0.5);

  const auto shallow = shallow_distinguishability(simulate_pair(paper_example()));
  EXPECT_FALSE(witness_threshold(shallow).has_value());
}

TEST(RunWitness, ExampleSemiclassical) {
  const WitnessResult r = run_witness(paper_example(), {0.5, WitnessModel::Semiclassical});
  EXPECT_EQ(r.purity_shallow, 1.0);
  EXPECT_NEAR(r.purity_deep, kExamplePurity, 1e-14);
  EXPECT_NEAR(r.purity_deep, 0.797, 5e-3);
  EXPECT_NEAR(*r.phi_threshold, 0.4082, 5e-4);
  EXPECT_TRUE(r.observable);
  EXPECT_EQ(r.branch_phases, (std::vector<double>{0.0, 0.0, -1.0, 1.0}));
}

TEST(RunWitness, BelowThresholdNotObservable) {
  const WitnessResult r = run_witness(paper_example(), {0.4, WitnessModel::Semiclassical});
  EXPECT_FALSE(r.observable);
}

TEST(RunWitness, ZeroCouplingIsPure) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const CircuitPair pair = generate_matched_pair(seed, 2, 3, 4);
    for (WitnessModel model : {WitnessModel::Semiclassical, WitnessModel::FullUnitary}) {
      const WitnessResult r = run_witness(pair, {0.0, model});
      EXPECT_NEAR(r.purity_deep, 1.0, 1e-10);
      EXPECT_NEAR(r.purity_shallow, 1.0, 1e-10);
    }
  }
}

TEST(RunWitness, SemiclassicalShallowAlwaysPure) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const CircuitPair pair = generate_matched_pair(seed, 1 + static_cast<int>(seed % 3), 3, 4);
    const WitnessResult r = run_witness(pair, {0.1 + 0.01 * static_cast<double>(seed), WitnessModel::Semiclassical});
    EXPECT_NEAR(r.purity_shallow, 1.0, 1e-12) << seed;
    EXPECT_GE(r.purity_deep, 0.5 - 1e-12);
    EXPECT_LE(r.purity_deep, 1.0 + 1e-12);
  }
}

// Explicit control (x) data (x) ancilla evolution with dense matrices.
double oracle_full_unitary_purity(const CircuitPair& pair, double phi, bool deep) {
  using namespace oracle;
  const int total = pair.m + pair.n + 1;
  const Eigen::Index branches = Eigen::Index{1} << pair.m;
  const Eigen::Index rest = Eigen::Index{1} << (pair.n + 1);
  Vec psi = Vec::Zero(branches * rest);
  for (Eigen::Index i = 0; i < branches; ++i) {
    psi[i * rest] = pair.control_amplitudes[static_cast<std::size_t>(i)] / std::sqrt(2.0);
    psi[i * rest + 1] = pair.control_amplitudes[static_cast<std::size_t>(i)] / std::sqrt(2.0);
  }
  for (int t = 0; t < pair.t_steps; ++t) {
    Mat u = Mat::Zero(branches * rest, branches * rest);
    for (Eigen::Index i = 0; i < branches; ++i) {
      Mat p = Mat::Zero(branches, branches);
      p(i, i) = 1.0;
      const BranchProgram& prog = deep ? pair.deep_branches[static_cast<std::size_t>(i)] : pair.shallow;
      u += kron(p, kron(gate_matrix(prog.steps[static_cast<std::size_t>(t)], pair.n), identity(2)));
    }
    psi = u * psi;
    for (int k = 0; k < pair.n; ++k) psi = gate_matrix(GateOp::cphase(pair.m + k, total - 1, phi), total) * psi;
  }
  Mat rho = Mat::Zero(2, 2);
  for (Eigen::Index b = 0; b < psi.size(); b += 2) {
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) rho(r, c) += psi[b + r] * std::conj(psi[b + c]);
    }
  }
  return (rho * rho).trace().real();
}

TEST(RunWitness, FullUnitaryMatchesDenseOracle) {
  const CircuitPair pair = paper_example();
  for (double phi : {0.1, 0.5, 1.3}) {
    const WitnessResult r = run_witness(pair, {phi, WitnessModel::FullUnitary});
    EXPECT_NEAR(r.purity_deep, oracle_full_unitary_purity(pair, phi, true), 1e-10);
    EXPECT_NEAR(r.purity_shallow, oracle_full_unitary_purity(pair, phi, false), 1e-10);
    EXPECT_GE(r.purity_deep, 0.5 - 1e-10);
    EXPECT_LE(r.purity_deep, 1.0 + 1e-10);
  }
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const CircuitPair g = generate_matched_pair(seed, 2, 2, 3);
    const WitnessResult r = run_witness(g, {0.7, WitnessModel::FullUnitary});
    EXPECT_NEAR(r.purity_deep, oracle_full_unitary_purity(g, 0.7, true), 1e-10);
  }
}

TEST(RunWitness, FullUnitarySizeLimit) {
  CircuitPair pair;
  pair.m = 2;
  pair.n = 22;
  EXPECT_THROW(run_witness(pair, {0.5, WitnessModel::FullUnitary}), ConfigError);
}

}  // namespace
}  // namespace logdepth
