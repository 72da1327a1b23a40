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

#include <stdexcept>
#include <string>
#include <utility>

namespace logdepth {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad sizes or parameters supplied by the caller (register size, generator
/// bounds, flags).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation was not met.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Malformed circuit-pair document. `path()` is the JSON path of the
/// offending field ("$" for document-level syntax errors).
class ParseError : public Error {
 public:
  ParseError(std::string path, const std::string& message)
      : Error(path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// A structurally valid pair that breaks a domain invariant. `invariant()`
/// names the rule, e.g. "branch count".
class ValidationError : public Error {
 public:
  ValidationError(std::string invariant, const std::string& detail)
      : Error(invariant + ": " + detail), invariant_(std::move(invariant)) {}

  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

/// The steering parameter cannot reach the requested halting probability.
class InfeasibleError : public Error {
 public:
  InfeasibleError(double lo, double hi, const std::string& message)
      : Error(message), lo_(lo), hi_(hi) {}

  double achievable_min() const noexcept { return lo_; }
  double achievable_max() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

/// Round-off pushed a quantity that must be PSD or normalized outside its
/// tolerance band.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace logdepth
