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

// Full analysis pipeline and its human/machine renderings.

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "logdepth/circuit.hpp"
#include "logdepth/decoherence.hpp"
#include "logdepth/document.hpp"
#include "logdepth/matcher.hpp"
#include "logdepth/simulation.hpp"
#include "logdepth/witness.hpp"

namespace logdepth {

inline constexpr double kDefaultGamma = 0.17;
inline constexpr double kDefaultPhi = 0.5;
inline constexpr int kReportDigits = 12;
inline constexpr int kDisplayDecimals = 4;

inline constexpr const char* kBoundCaveat = "upper bound (saturation assumed)";
inline constexpr const char* kOverlapConvention =
    "amplitude overlap exp(-gamma*D/2), positive root, zero phase";
inline constexpr const char* kFullUnitaryCaveat =
    "full-unitary ancilla also entangles with data superpositions; shallow purity below 1 "
    "does not indicate branching";

struct AnalysisOptions {
  double gamma = kDefaultGamma;
  WitnessConfig witness;
  bool match = true;
};

struct DistinguishabilityRow {
  int i = 0;
  int j = 0;
  double final_step = 0.0;
  double accumulated = 0.0;
};

struct AnalysisReport {
  CircuitPair pair;
  MatchingReport matching;
  std::optional<MatchResult> steering;
  PairTrace trace;
  DistinguishabilityMatrix deep_d;
  DistinguishabilityMatrix shallow_d;
  EntropyReport entropy;
  double gamma = 0.0;
  /// Effective environment entropy (bits) after each step at `gamma`.
  std::vector<double> effective_entropy_bits;
  WitnessResult witness;

  double steering_angle() const {
    const GateOp* g = steering_gate(pair);
    return g ? g->angle : std::numeric_limits<double>::quiet_NaN();
  }
};

/// Upper-triangle rows (i < j) in lexicographic order.
inline std::vector<DistinguishabilityRow> distinguishability_rows(const DistinguishabilityMatrix& d) {
  std::vector<DistinguishabilityRow> rows;
  const int b = d.num_branches();
  for (int i = 0; i < b; ++i) {
    for (int j = i + 1; j < b; ++j) {
      rows.push_back({i, j, d.per_step.empty() ? 0.0 : d.per_step.back()(i, j), d.accumulated(i, j)});
    }
  }
  return rows;
}

/// Runs validate -> match (optional) -> simulate -> distinguishability ->
/// entropy -> witness.
inline AnalysisReport analyze(CircuitPair pair, const AnalysisOptions& options) {
  validate(pair);
  if (!(options.gamma >= 0.0) || !std::isfinite(options.gamma)) {
    throw ConfigError("gamma must be finite and non-negative");
  }
  AnalysisReport r;
  r.matching = validate_matching(pair);
  if (options.match) {
    r.steering = solve_steering(pair);
    pair = with_steering_angle(std::move(pair), r.steering->theta);
  }
  r.pair = std::move(pair);
  r.trace = simulate_pair(r.pair);
  r.deep_d = distinguishability(r.trace);
  r.shallow_d = shallow_distinguishability(r.trace);
  r.entropy = entropy_report(r.pair.m, r.pair.n, r.pair.t_steps, r.deep_d);
  r.gamma = options.gamma;
  for (int t = 1; t <= r.pair.t_steps; ++t) {
    r.effective_entropy_bits.push_back(
        effective_environment_entropy(r.pair.control_amplitudes, r.deep_d, r.gamma, t));
  }
  r.witness = run_witness(r.pair, r.trace, options.witness);
  return r;
}

/// Rounds to `digits` significant digits.
inline double round_significant(double v, int digits = kReportDigits) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return std::strtod(buf, nullptr);
}

/// Fixed-point with kDisplayDecimals, trailing zeros trimmed to one decimal.
inline std::string display_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", kDisplayDecimals, v);
  std::string s = buf;
  while (s.size() > 1 && s.back() == '0' && s[s.size() - 2] != '.') s.pop_back();
  if (s == "-0.0") s = "0.0";
  return s;
}

namespace detail {

inline Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round_significant(v);
}

inline Json optional_number(const std::optional<double>& v) {
  return v ? number(*v) : Json(nullptr);
}

inline Json numbers(const std::vector<double>& vs) {
  Json out = Json::array();
  for (double v : vs) out.push_back(number(v));
  return out;
}

inline Json profile_json(const ComplexityProfile& p) {
  return Json{{"single_qubit", p.single_qubit_count}, {"two_qubit", p.two_qubit_count},
              {"depth", p.depth}};
}

inline Json rows_json(const DistinguishabilityMatrix& d) {
  Json rows = Json::array();
  for (const auto& row : distinguishability_rows(d)) {
    rows.push_back(Json{{"pair", Json::array({row.i, row.j})},
                        {"final", number(row.final_step)},
                        {"accumulated", number(row.accumulated)}});
  }
  return rows;
}

}  // namespace detail

inline Json witness_to_json(const WitnessResult& w) {
  using detail::number;
  Json out;
  out["model"] = std::string(witness_model_name(w.model));
  out["phi"] = number(w.phi);
  out["branch_phases"] = detail::numbers(w.branch_phases);
  out["shallow_phase"] = number(w.shallow_phase);
  out["purity_deep"] = number(w.purity_deep);
  out["purity_shallow"] = number(w.purity_shallow);
  out["phi_threshold"] = detail::optional_number(w.phi_threshold);
  out["unobservable_at_any_coupling"] = !w.phi_threshold.has_value();
  out["observable"] = w.observable;
  if (w.model == WitnessModel::FullUnitary) out["note"] = kFullUnitaryCaveat;
  return out;
}

inline Json match_to_json(const MatchResult& m) {
  using detail::number;
  return Json{{"theta", number(m.theta)},       {"target_p", number(m.target_p)},
              {"achieved_p", number(m.achieved_p)}, {"residual", number(m.residual)},
              {"iterations", m.iterations},     {"closed_form", m.closed_form}};
}

/// Machine-readable report with sections pair, halting, distinguishability,
/// entropy and witness. Numbers carry kReportDigits significant digits.
inline Json report_to_json(const AnalysisReport& r) {
  using detail::number;
  Json out;

  Json pair;
  pair["m"] = r.pair.m;
  pair["n"] = r.pair.n;
  pair["t_steps"] = r.pair.t_steps;
  pair["matched"] = r.matching.matched;
  pair["mismatched_branches"] = r.matching.mismatched_branches;
  pair["shallow_profile"] = detail::profile_json(r.matching.shallow_profile);
  Json profiles = Json::array();
  for (const auto& p : r.matching.branch_profiles) profiles.push_back(detail::profile_json(p));
  pair["branch_profiles"] = std::move(profiles);
  out["pair"] = std::move(pair);

  Json halting;
  halting["per_branch"] = detail::numbers(r.trace.per_branch_p_halt);
  halting["deep_total"] = number(r.trace.p_halt_deep);
  halting["shallow_total"] = number(r.trace.p_halt_shallow);
  halting["theta"] = number(r.steering_angle());
  halting["solved"] = r.steering.has_value();
  if (r.steering) halting["match"] = match_to_json(*r.steering);
  out["halting"] = std::move(halting);

  Json dist;
  dist["deep"] = detail::rows_json(r.deep_d);
  dist["shallow"] = detail::rows_json(r.shallow_d);
  out["distinguishability"] = std::move(dist);

  Json entropy;
  entropy["bound_shallow_bits"] = number(r.entropy.bound_shallow_bits);
  entropy["bound_deep_bits"] = number(r.entropy.bound_deep_bits);
  entropy["bound_note"] = kBoundCaveat;
  entropy["l_d"] = number(r.entropy.l_d);
  entropy["l_d_asymptotic"] = number(r.entropy.l_d_asymptotic);
  entropy["gamma_min"] = detail::optional_number(r.entropy.gamma_min);
  entropy["unobservable_at_any_coupling"] = !r.entropy.gamma_min.has_value();
  entropy["gamma"] = number(r.gamma);
  entropy["overlap_convention"] = kOverlapConvention;
  entropy["effective_entropy_bits"] = detail::numbers(r.effective_entropy_bits);
  out["entropy"] = std::move(entropy);

  out["witness"] = witness_to_json(r.witness);
  return out;
}

/// Pair | final-step D | accumulated D, one row per branch pair.
inline std::string render_distinguishability_table(const DistinguishabilityMatrix& d) {
  std::ostringstream os;
  os << "pair | final | accumulated\n";
  for (const auto& row : distinguishability_rows(d)) {
    os << "(" << row.i << "," << row.j << ") | " << display_number(row.final_step) << " | "
       << display_number(row.accumulated) << "\n";
  }
  return os.str();
}

inline std::string render_witness(const WitnessResult& w) {
  std::ostringstream os;
  os << "witness (" << witness_model_name(w.model) << ", phi = " << display_number(w.phi) << " rad)\n";
  os << "  branch phases:";
  for (double p : w.branch_phases) os << " " << display_number(p);
  os << "\n  shallow phase: " << display_number(w.shallow_phase) << "\n";
  os << "  purity deep: " << display_number(w.purity_deep) << "\n";
  os << "  purity shallow: " << display_number(w.purity_shallow) << "\n";
  os << "  phi threshold: "
     << (w.phi_threshold ? display_number(*w.phi_threshold) + " rad" : "unobservable at any coupling")
     << "\n";
  os << "  observable: " << (w.observable ? "yes" : "no") << "\n";
  if (w.model == WitnessModel::FullUnitary) os << "  note: " << kFullUnitaryCaveat << "\n";
  return os.str();
}

inline std::string render_match(const MatchResult& m) {
  std::ostringstream os;
  os << "steering match\n";
  os << "  target P_halt: " << display_number(m.target_p) << "\n";
  os << "  theta: " << display_number(m.theta) << " rad"
     << (m.closed_form ? " (closed form)" : "") << "\n";
  os << "  achieved P_halt: " << display_number(m.achieved_p) << "\n";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", m.residual);
  os << "  residual: " << buf << "\n";
  os << "  iterations: " << m.iterations << "\n";
  return os.str();
}

inline std::string render_report(const AnalysisReport& r) {
  std::ostringstream os;
  os << "pair: m = " << r.pair.m << ", n = " << r.pair.n << ", T = " << r.pair.t_steps
     << ", complexity matched: " << (r.matching.matched ? "yes" : "no");
  if (!r.matching.matched) {
    os << " (mismatched branches:";
    for (int b : r.matching.mismatched_branches) os << " " << b;
    os << ")";
  }
  os << "\n\nhalting\n  per branch:";
  for (double p : r.trace.per_branch_p_halt) os << " " << display_number(p);
  os << "\n  deep total: " << display_number(r.trace.p_halt_deep) << "\n";
  os << "  shallow total: " << display_number(r.trace.p_halt_shallow) << "\n";
  os << "  steering theta: " << display_number(r.steering_angle()) << " rad"
     << (r.steering ? "" : " (not solved)") << "\n";

  os << "\ndistinguishability (deep)\n" << render_distinguishability_table(r.deep_d);

  os << "\nentropy\n";
  os << "  deep: " << display_number(r.entropy.bound_deep_bits) << " bits, " << kBoundCaveat << "\n";
  os << "  shallow: " << display_number(r.entropy.bound_shallow_bits) << " bits, " << kBoundCaveat
     << "\n";
  os << "  L_d: " << display_number(r.entropy.l_d) << "\n";
  os << "  L_d asymptotic: " << display_number(r.entropy.l_d_asymptotic) << "\n";
  os << "  gamma_min: "
     << (r.entropy.gamma_min ? display_number(*r.entropy.gamma_min) : "unobservable at any coupling")
     << "\n";
  os << "  effective entropy at gamma = " << display_number(r.gamma) << " (bits per step):";
  for (double s : r.effective_entropy_bits) os << " " << display_number(s);
  os << "\n  overlap convention: " << kOverlapConvention << "\n";

  os << "\n" << render_witness(r.witness);
  return os.str();
}

}  // namespace logdepth
