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

// Command-line front end. Exit codes: 0 success, 1 bad input (I/O, parse,
// flags, bounds), 2 circuit-pair validation failure, 3 infeasible matching.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "logdepth/circuit.hpp"
#include "logdepth/document.hpp"
#include "logdepth/errors.hpp"
#include "logdepth/matcher.hpp"
#include "logdepth/report.hpp"

namespace logdepth::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 1,
  kValidationFailure = 2,
  kInfeasibleMatch = 3,
};

inline constexpr int kGenerateAttempts = 16;

namespace detail {

struct Options {
  std::string input;
  bool paper_example = false;
  double gamma = kDefaultGamma;
  double phi = kDefaultPhi;
  std::string witness_model = "semiclassical";
  bool no_match = false;
  bool shallow = false;
  std::string output;
  std::string format = "table";
  int m = 0;
  int n = 0;
  int t = 0;
  std::uint64_t seed = 0;
};

class IoError : public Error {
 public:
  using Error::Error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline CircuitPair load_pair(const Options& o) {
  if (o.paper_example) return paper_example();
  if (o.input.empty()) throw ConfigError("one of --input or --paper-example is required");
  return parse_pair(read_file(o.input));
}

inline AnalysisOptions analysis_options(const Options& o) {
  AnalysisOptions a;
  a.gamma = o.gamma;
  a.match = !o.no_match;
  a.witness.phi = o.phi;
  const auto model = parse_witness_model(o.witness_model);
  if (!model) throw ConfigError("unknown witness model '" + o.witness_model + "'");
  a.witness.model = *model;
  return a;
}

inline void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.output, std::ios::binary);
  if (!file) throw IoError("cannot write output file '" + o.output + "'");
  file << text;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::string cmd_analyze(const Options& o) {
  const AnalysisReport r = analyze(load_pair(o), analysis_options(o));
  return o.format == "machine" ? report_to_json(r).dump(2) + "\n" : render_report(r);
}

inline std::string cmd_table(const Options& o) {
  const AnalysisReport r = analyze(load_pair(o), analysis_options(o));
  const DistinguishabilityMatrix& d = o.shallow ? r.shallow_d : r.deep_d;
  if (o.format == "machine") {
    Json out;
    out["distinguishability"][o.shallow ? "shallow" : "deep"] = logdepth::detail::rows_json(d);
    return out.dump(2) + "\n";
  }
  return render_distinguishability_table(d);
}

inline std::string cmd_witness(const Options& o) {
  const AnalysisReport r = analyze(load_pair(o), analysis_options(o));
  if (o.format == "machine") return Json{{"witness", witness_to_json(r.witness)}}.dump(2) + "\n";
  return render_witness(r.witness);
}

inline std::string cmd_match(const Options& o) {
  const CircuitPair pair = load_pair(o);
  const MatchResult m = solve_steering(pair);
  if (o.format == "machine") {
    Json out;
    out["match"] = match_to_json(m);
    out["pair"] = pair_to_json(with_steering_angle(pair, m.theta));
    return out.dump(2) + "\n";
  }
  return render_match(m);
}

/// Generates a pair and solves its steering angle, retrying with derived
/// sub-seeds when the steering target is out of reach.
inline std::string cmd_generate(const Options& o) {
  std::optional<InfeasibleError> last;
  for (int attempt = 0; attempt < kGenerateAttempts; ++attempt) {
    const std::uint64_t seed = attempt == 0 ? o.seed : splitmix64(o.seed + static_cast<std::uint64_t>(attempt));
    CircuitPair pair = generate_matched_pair(seed, o.m, o.n, o.t);
    try {
      const MatchResult m = solve_steering(pair);
      return serialize_pair(with_steering_angle(std::move(pair), m.theta));
    } catch (const InfeasibleError& e) {
      last = e;
    }
  }
  throw *last;
}

}  // namespace detail

/// Runs the CLI on `args` (args[0] is the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Logical-depth analysis of deep/shallow quantum circuit pairs", "logdepth"};
  app.require_subcommand(1);
  detail::Options o;

  const auto add_source = [&](CLI::App* sub) {
    auto* input = sub->add_option("--input", o.input, "Circuit-pair document (JSON)");
    auto* paper = sub->add_flag("--paper-example", o.paper_example, "Use the built-in four-branch example");
    input->excludes(paper);
  };
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output", o.output, "Write to this path instead of standard output");
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"table", "machine"}))
        ->capture_default_str();
  };
  const auto add_analysis = [&](CLI::App* sub) {
    sub->add_option("--gamma", o.gamma, "Effective dephasing strength")->capture_default_str();
    sub->add_option("--phi", o.phi, "Ancilla C-PHASE angle (rad)")->capture_default_str();
    sub->add_option("--witness-model", o.witness_model, "semiclassical or full-unitary")
        ->check(CLI::IsMember({"semiclassical", "full-unitary"}))
        ->capture_default_str();
    sub->add_flag("--no-match", o.no_match, "Keep the document's steering angle");
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "Run the full analysis pipeline");
  add_source(analyze_cmd);
  add_analysis(analyze_cmd);
  add_common(analyze_cmd);

  auto* table_cmd = app.add_subcommand("table", "Render the distinguishability table");
  add_source(table_cmd);
  add_analysis(table_cmd);
  add_common(table_cmd);
  table_cmd->add_flag("--shallow", o.shallow, "Tabulate the shallow path instead of the deep branches");

  auto* witness_cmd = app.add_subcommand("witness", "Ancilla witness purities");
  add_source(witness_cmd);
  add_analysis(witness_cmd);
  add_common(witness_cmd);

  auto* match_cmd = app.add_subcommand("match", "Solve the shallow steering angle");
  add_source(match_cmd);
  add_common(match_cmd);

  auto* generate_cmd = app.add_subcommand("generate", "Emit a seeded, matched circuit-pair document");
  generate_cmd->add_option("--m", o.m, "Control qubits")->required();
  generate_cmd->add_option("--n", o.n, "Data qubits")->required();
  generate_cmd->add_option("--t", o.t, "Steps per path")->required();
  generate_cmd->add_option("--seed", o.seed, "Generator seed")->required();
  generate_cmd->add_option("--output", o.output, "Write to this path instead of standard output");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    std::string text;
    if (*analyze_cmd) text = detail::cmd_analyze(o);
    else if (*table_cmd) text = detail::cmd_table(o);
    else if (*witness_cmd) text = detail::cmd_witness(o);
    else if (*match_cmd) text = detail::cmd_match(o);
    else text = detail::cmd_generate(o);
    detail::emit(o, text, out);
    return kSuccess;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const InfeasibleError& e) {
    err << "infeasible matching: " << e.what() << "\n";
    return kInfeasibleMatch;
  } catch (const ParseError& e) {
    err << "parse error at " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace logdepth::cli
