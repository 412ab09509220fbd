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

#include <string>
#include <vector>

#include "padicval/stacked.hpp"
#include "padicval/valuation_domain.hpp"

namespace padicval {

struct EquivalenceResult {
  enum class Kind { consistent, not_equivalent };
  Kind kind = Kind::consistent;
  std::string witness;
  std::size_t compared_levels = 0;
  std::size_t samples_used = 0;
  std::vector<std::string> notes;

  std::string str() const {
    return kind == Kind::consistent ? "ConsistentWithEquivalent" : "NotEquivalent(" + witness + ")";
  }
};

/// Refutes equivalence when degrees, gauges or sample valuations differ on the
/// common window. Agreement is never conclusive at finite truncation.
inline EquivalenceResult equivalence_check(const StackedSequence& s1, const StackedSequence& s2,
                                           const std::vector<RationalFunction>& samples = {}) {
  if (s1.tower.p() != s2.tower.p()) fail(ErrorCode::invalid_argument, "sequences over different primes");
  EquivalenceResult r;
  const std::size_t levels = std::min(s1.records.size(), s2.records.size());
  r.compared_levels = levels;
  for (std::size_t n = 0; n < levels; ++n) {
    if (s1.records[n].degree != s2.records[n].degree) {
      r.kind = EquivalenceResult::Kind::not_equivalent;
      r.witness = "d_" + std::to_string(n) + " mismatch: " + std::to_string(s1.records[n].degree) + " vs " +
                  std::to_string(s2.records[n].degree);
      return r;
    }
  }
  const std::size_t gauges = std::min(s1.gauge.size(), s2.gauge.size());
  for (std::size_t n = 0; n < gauges; ++n) {
    if (s1.gauge[n] != s2.gauge[n]) {
      r.kind = EquivalenceResult::Kind::not_equivalent;
      r.witness = "delta_" + std::to_string(n) + " mismatch: " + s1.gauge[n].str() + " vs " + s2.gauge[n].str();
      return r;
    }
  }
  const ValuationHandle h1 = ValuationHandle::over_sequence(s1);
  const ValuationHandle h2 = ValuationHandle::over_sequence(s2);
  for (const RationalFunction& phi : samples) {
    Rat v1, v2;
    try {
      v1 = valuate(h1, phi);
      v2 = valuate(h2, phi);
    } catch (const Error& e) {
      r.notes.push_back("sample " + phi.str() + " skipped: " + e.what());
      continue;
    }
    ++r.samples_used;
    if (v1 != v2) {
      r.kind = EquivalenceResult::Kind::not_equivalent;
      r.witness = "w(" + phi.str() + ") = " + v1.str() + " vs " + v2.str();
      return r;
    }
  }
  r.notes.push_back("agreement on a finite window is not a proof of equivalence");
  return r;
}

}  // namespace padicval
