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

// JSON circuit-pair documents.
//
//   {
//     "m": 2, "n": 3, "t_steps": 4,
//     "control_amplitudes": [[0.5, 0.0], ...],
//     "deep_branches": [[{"gate": "H", "targets": [0]}, ...], ...],
//     "shallow": [{"gate": "RY", "targets": [2], "angle": 1.8235}, ...],
//     "halting": {"qubit": 2, "value": 0}      (or a list, one per branch)
//   }
//
// Unknown fields are rejected. Structural problems raise ParseError with a
// JSON path; domain rules are checked afterwards by validate().

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "logdepth/circuit.hpp"
#include "logdepth/errors.hpp"

namespace logdepth {

using Json = nlohmann::ordered_json;

namespace detail {

inline void reject_unknown_fields(const Json& obj, const std::string& path,
                                  std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (std::string_view a : allowed) known = known || key == a;
    if (!known) throw ParseError(path + "." + key, "unknown field");
  }
}

inline const Json& require_field(const Json& obj, const std::string& path, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path + "." + key, "missing required field");
  return *it;
}

inline int require_int(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ParseError(path, "expected an integer");
  const auto x = v.get<std::int64_t>();
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
    throw ParseError(path, "integer out of range");
  }
  return static_cast<int>(x);
}

inline double require_number(const Json& v, const std::string& path) {
  if (!v.is_number()) throw ParseError(path, "expected a number");
  return v.get<double>();
}

inline const Json& require_array(const Json& v, const std::string& path) {
  if (!v.is_array()) throw ParseError(path, "expected an array");
  return v;
}

inline const Json& require_object(const Json& v, const std::string& path) {
  if (!v.is_object()) throw ParseError(path, "expected an object");
  return v;
}

inline GateOp parse_gate(const Json& v, const std::string& path) {
  require_object(v, path);
  reject_unknown_fields(v, path, {"gate", "targets", "angle"});
  const Json& name = require_field(v, path, "gate");
  if (!name.is_string()) throw ParseError(path + ".gate", "expected a string");
  const auto kind = parse_gate_kind(name.get<std::string>());
  if (!kind) throw ParseError(path + ".gate", "unknown gate '" + name.get<std::string>() + "'");

  GateOp gate;
  gate.kind = *kind;
  const std::string tpath = path + ".targets";
  const Json& targets = require_array(require_field(v, path, "targets"), tpath);
  if (static_cast<int>(targets.size()) != gate_arity(*kind)) {
    throw ParseError(tpath, std::string(gate_name(*kind)) + " takes " +
                                std::to_string(gate_arity(*kind)) + " target(s)");
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    gate.targets[i] = require_int(targets[i], tpath + "[" + std::to_string(i) + "]");
  }
  const auto angle = v.find("angle");
  if (gate_has_angle(*kind)) {
    if (angle == v.end()) throw ParseError(path + ".angle", "missing required field");
    gate.angle = require_number(*angle, path + ".angle");
  } else if (angle != v.end()) {
    throw ParseError(path + ".angle", std::string(gate_name(*kind)) + " takes no angle");
  }
  return gate;
}

inline BranchProgram parse_program(const Json& v, const std::string& path) {
  require_array(v, path);
  BranchProgram prog;
  for (std::size_t i = 0; i < v.size(); ++i) {
    prog.steps.push_back(parse_gate(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return prog;
}

inline HaltingProjector parse_projector(const Json& v, const std::string& path) {
  require_object(v, path);
  reject_unknown_fields(v, path, {"qubit", "value"});
  return {require_int(require_field(v, path, "qubit"), path + ".qubit"),
          require_int(require_field(v, path, "value"), path + ".value")};
}

inline std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace detail

inline Json gate_to_json(const GateOp& g) {
  Json out;
  out["gate"] = std::string(gate_name(g.kind));
  Json targets = Json::array();
  for (int q : g.qubits()) targets.push_back(q);
  out["targets"] = std::move(targets);
  if (gate_has_angle(g.kind)) out["angle"] = g.angle;
  return out;
}

inline Json program_to_json(const BranchProgram& prog) {
  Json out = Json::array();
  for (const GateOp& g : prog.steps) out.push_back(gate_to_json(g));
  return out;
}

inline Json pair_to_json(const CircuitPair& pair) {
  Json out;
  out["m"] = pair.m;
  out["n"] = pair.n;
  out["t_steps"] = pair.t_steps;
  Json amps = Json::array();
  for (const Complex& a : pair.control_amplitudes) amps.push_back(Json::array({a.real(), a.imag()}));
  out["control_amplitudes"] = std::move(amps);
  Json deep = Json::array();
  for (const BranchProgram& b : pair.deep_branches) deep.push_back(program_to_json(b));
  out["deep_branches"] = std::move(deep);
  out["shallow"] = program_to_json(pair.shallow);
  const auto proj = [](const HaltingProjector& p) { return Json{{"qubit", p.qubit}, {"value", p.value}}; };
  if (pair.halting.uniform) {
    out["halting"] = proj(pair.halting.projectors.at(0));
  } else {
    Json list = Json::array();
    for (const HaltingProjector& p : pair.halting.projectors) list.push_back(proj(p));
    out["halting"] = std::move(list);
  }
  return out;
}

inline std::string serialize_pair(const CircuitPair& pair) {
  return pair_to_json(pair).dump(2) + "\n";
}

/// Structural decoding without domain validation.
inline CircuitPair pair_from_json(const Json& doc) {
  using namespace detail;
  const std::string root = "$";
  require_object(doc, root);
  reject_unknown_fields(doc, root, {"m", "n", "t_steps", "control_amplitudes", "deep_branches",
                                    "shallow", "halting"});
  CircuitPair pair;
  pair.m = require_int(require_field(doc, root, "m"), "$.m");
  pair.n = require_int(require_field(doc, root, "n"), "$.n");
  pair.t_steps = require_int(require_field(doc, root, "t_steps"), "$.t_steps");

  const Json& amps = require_array(require_field(doc, root, "control_amplitudes"),
                                   "$.control_amplitudes");
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const std::string p = "$.control_amplitudes[" + std::to_string(i) + "]";
    if (!amps[i].is_array() || amps[i].size() != 2) throw ParseError(p, "expected [re, im]");
    pair.control_amplitudes.emplace_back(require_number(amps[i][0], p + "[0]"),
                                         require_number(amps[i][1], p + "[1]"));
  }

  const Json& deep = require_array(require_field(doc, root, "deep_branches"), "$.deep_branches");
  for (std::size_t i = 0; i < deep.size(); ++i) {
    pair.deep_branches.push_back(parse_program(deep[i], "$.deep_branches[" + std::to_string(i) + "]"));
  }
  pair.shallow = parse_program(require_field(doc, root, "shallow"), "$.shallow");

  const Json& halting = require_field(doc, root, "halting");
  if (halting.is_object()) {
    pair.halting = HaltingSpec::shared(parse_projector(halting, "$.halting"));
  } else if (halting.is_array()) {
    std::vector<HaltingProjector> ps;
    for (std::size_t i = 0; i < halting.size(); ++i) {
      ps.push_back(parse_projector(halting[i], "$.halting[" + std::to_string(i) + "]"));
    }
    pair.halting = HaltingSpec::per_branch(std::move(ps));
  } else {
    throw ParseError("$.halting", "expected an object or an array of objects");
  }
  return pair;
}

/// Parses and validates a circuit-pair document.
inline CircuitPair parse_pair(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("$", "syntax error at " + detail::line_column(text, e.byte) + ": " + e.what());
  }
  CircuitPair pair = pair_from_json(doc);
  validate(pair);
  return pair;
}

}  // namespace logdepth
