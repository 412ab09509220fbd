// Copyright 2026 The padicval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace padicval {

enum class ErrorCode {
  invalid_argument,
  below_precision,
  precision_insufficient,
  domain_error,
  contract_violation,
  window_too_short,
  stabilization_failure,
  denominator_vanishes,
  nonzero_valuation,
  primitive_search_exhausted,
  unsupported,
  unverified_nonconjugacy,
  parse_error,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::below_precision: return "below-precision";
    case ErrorCode::precision_insufficient: return "precision-insufficient";
    case ErrorCode::domain_error: return "domain-error";
    case ErrorCode::contract_violation: return "contract-violation";
    case ErrorCode::window_too_short: return "window-too-short";
    case ErrorCode::stabilization_failure: return "stabilization-failure";
    case ErrorCode::denominator_vanishes: return "denominator-vanishes";
    case ErrorCode::nonzero_valuation: return "nonzero-valuation";
    case ErrorCode::primitive_search_exhausted: return "primitive-element-search-exhausted";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::unverified_nonconjugacy: return "unverified-nonconjugacy";
    case ErrorCode::parse_error: return "parse-error";
  }
  return "unknown";
}

/// Base of every error raised by the library. The code is stable and is what
/// the CLI puts into its structured error record.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised when a result cannot be certified at the session precision. Carries
/// the precision the caller should retry with.
class PrecisionError : public Error {
 public:
  PrecisionError(ErrorCode code, const std::string& what, unsigned retry_precision)
      : Error(code, what), retry_precision_(retry_precision) {}

  unsigned retry_precision() const noexcept { return retry_precision_; }

 private:
  unsigned retry_precision_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(ErrorCode::parse_error, what + " (line " + std::to_string(line) +
                                          ", column " + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace padicval
