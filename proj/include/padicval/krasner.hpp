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

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "padicval/minpoly.hpp"
#include "padicval/newton.hpp"
#include "padicval/tower.hpp"

namespace padicval {

/// Both elements viewed in the larger of their two towers; one tower must
/// be a prefix of the other.
inline std::pair<TowerElement, TowerElement> common_tower(const TowerElement& a,
                                                          const TowerElement& b) {
  const TowerField& fa = a.field();
  const TowerField& fb = b.field();
  if (fa.same_as(fb)) return {a, b};
  if (fa.has_prefix(fb)) return {a, fa.embed(b)};
  if (fb.has_prefix(fa)) return {fb.embed(a), b};
  fail(ErrorCode::contract_violation, "elements do not share a tower");
}

/// Valuation of a - b as an extended value, with the precision ceiling when
/// the difference vanishes mod p^N (then only v >= N is known).
struct DifferenceValuation {
  Rat value;
  bool exact = true;
};

inline DifferenceValuation difference_valuation(const TowerElement& a, const TowerElement& b) {
  auto [x, y] = common_tower(a, b);
  ValuationBound vb = (x - y).valuation_bound();
  return {vb.value, vb.exact};
}

struct ConjugateDistances {
  std::vector<Rat> distances;  // ascending
  bool degree_one = false;
  std::size_t degree = 0;
};

/// v(x - x') over the conjugates x' != x, read off the Newton polygon of
/// m(x + Y) / Y. Coefficients whose valuation reaches the precision of m
/// count as lower bounds.
inline ConjugateDistances conjugate_distances(const TowerElement& x) {
  MinimalPolynomial m = minimal_polynomial(x);
  ConjugateDistances out;
  out.degree = m.degree();
  if (out.degree == 1) {
    out.degree_one = true;
    return out;
  }
  const TowerElement y = x.field().restrict_to(x, m.level);
  Poly<TowerElement> shifted = m.poly.taylor_shift(y);
  std::vector<CoeffValuation> cv;
  const Rat cap(static_cast<long>(m.precision));
  for (std::size_t i = 1; i < shifted.size(); ++i) {
    ValuationBound b = shifted[i].valuation_bound();
    if (b.exact && b.value < cap) cv.push_back(CoeffValuation::exact(b.value));
    else cv.push_back(CoeffValuation::at_least(std::min(b.value, cap)));
  }
  try {
    out.distances = root_valuations(newton_polygon(cv));
  } catch (const PrecisionError&) {
    throw PrecisionError(ErrorCode::precision_insufficient,
                         "conjugate distances undetermined at precision " +
                             std::to_string(m.precision),
                         2 * x.field().precision());
  }
  if (out.distances.size() != out.degree - 1)
    throw PrecisionError(ErrorCode::precision_insufficient, "conjugate distances incomplete",
                         2 * x.field().precision());
  return out;
}

/// Largest conjugate distance; -inf for elements of Q_p.
inline ExtVal omega(const TowerElement& x) {
  ConjugateDistances cd = conjugate_distances(x);
  if (cd.degree_one) return ExtVal::neg_infinity();
  return ExtVal(cd.distances.back());
}

/// Upper bound for the minimal-pair threshold of x.
inline Rat delta_upper_bound(const TowerElement& x) {
  ExtVal w = omega(x);
  if (w.kind() != ExtVal::Kind::finite)
    fail(ErrorCode::domain_error, "delta bound needs an element of degree at least 2");
  return w.value();
}

enum class Verdict { certified, refuted, unknown };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::certified: return "Certified";
    case Verdict::refuted: return "Refuted";
    case Verdict::unknown: return "Unknown";
  }
  return "?";
}

enum class ConditionStatus { holds, fails, unknown };

inline const char* condition_status_name(ConditionStatus s) {
  switch (s) {
    case ConditionStatus::holds: return "holds";
    case ConditionStatus::fails: return "fails";
    case ConditionStatus::unknown: return "unknown";
  }
  return "?";
}

struct ConditionReport {
  std::string name;
  ConditionStatus status = ConditionStatus::unknown;
  std::string detail;
};

struct PairCertificate {
  Verdict verdict = Verdict::unknown;
  std::string method;                   // omega-bound, degree-vacuous, counterexample
  std::optional<std::string> witness;
  std::vector<ConditionReport> conditions;
};

/// Sufficient tests for (x, delta) being a minimal pair. A caller candidate c
/// of lower degree with v(x - c) >= delta refutes it.
inline PairCertificate certify_minimal_pair(const TowerElement& x, const Rat& delta,
                                            const std::optional<TowerElement>& candidate = {}) {
  PairCertificate cert;
  const std::size_t dx = degree_over_qp(x);
  if (candidate) {
    const std::size_t dc = degree_over_qp(*candidate);
    DifferenceValuation v = difference_valuation(x, *candidate);
    if (dc < dx && v.value >= delta) {
      cert.verdict = Verdict::refuted;
      cert.method = "counterexample";
      cert.witness = "v(x - c) " + std::string(v.exact ? "= " : ">= ") + v.value.str() +
                     " >= " + delta.str() + " with deg c = " + std::to_string(dc);
      return cert;
    }
  }
  if (dx == 1) {
    cert.verdict = Verdict::certified;
    cert.method = "degree-vacuous";
    cert.witness = "x lies in Q_p";
    return cert;
  }
  ExtVal w = omega(x);
  if (ExtVal(delta) > w) {
    cert.verdict = Verdict::certified;
    cert.method = "omega-bound";
    cert.witness = "delta " + delta.str() + " > omega " + w.str();
  }
  return cert;
}

enum class Inclusion { implied, not_implied };

inline const char* inclusion_name(Inclusion i) {
  return i == Inclusion::implied ? "Implied" : "NotImplied";
}

/// Krasner: v(a - b) > omega(a) forces Q_p(a) inside Q_p(b).
inline Inclusion krasner_inclusion(const TowerElement& a, const TowerElement& b) {
  ExtVal w = omega(a);
  DifferenceValuation v = difference_valuation(a, b);
  return ExtVal(v.value) > w ? Inclusion::implied : Inclusion::not_implied;
}

/// Computable fragments of (b, a) being a distinguished pair.
inline PairCertificate check_distinguished_necessary(
    const TowerElement& b, const TowerElement& a,
    const std::optional<TowerElement>& counterexample = {}) {
  PairCertificate cert;
  const std::size_t da = degree_over_qp(a);
  const std::size_t db = degree_over_qp(b);
  const DifferenceValuation vab = difference_valuation(a, b);
  const std::string vab_str = (vab.exact ? "" : ">=") + vab.value.str();

  ConditionReport c1{"i", db < da ? ConditionStatus::holds : ConditionStatus::fails,
                     "deg b = " + std::to_string(db) + ", deg a = " + std::to_string(da)};

  ConditionReport c2{"ii", ConditionStatus::unknown, "v(a - b) = delta(a) is not computable"};
  if (counterexample) {
    const std::size_t dc = degree_over_qp(*counterexample);
    DifferenceValuation vac = difference_valuation(a, *counterexample);
    if (!vab.exact) {
      c2.detail = "v(a - b) is below precision";
    } else if (dc < da && vac.value > vab.value) {
      c2.status = ConditionStatus::fails;
      c2.detail = "counterexample c of degree " + std::to_string(dc) + " with v(a - c) " +
                  (vac.exact ? "= " : ">= ") + vac.value.str() + " > " + vab.value.str();
    }
  }

  const ExtVal wb = omega(b);
  const bool above = ExtVal(vab.value) > wb;
  ConditionReport c3{"iii", above ? ConditionStatus::holds : ConditionStatus::unknown,
                     "v(a - b) " + vab_str + (above ? " > " : " <= ") + "omega(b) " + wb.str()};

  cert.conditions = {c1, c2, c3};
  if (above) {
    auto ia = subfield_invariants(a);
    auto ib = subfield_invariants(b);
    if (ia && ib) {
      auto divides = [](long x, long y) { return y % x == 0; };
      cert.conditions.push_back({"e-divides",
                                 divides(ib->e, ia->e) ? ConditionStatus::holds : ConditionStatus::fails,
                                 std::to_string(ib->e) + " | " + std::to_string(ia->e)});
      cert.conditions.push_back({"f-divides",
                                 divides(ib->f, ia->f) ? ConditionStatus::holds : ConditionStatus::fails,
                                 std::to_string(ib->f) + " | " + std::to_string(ia->f)});
      cert.conditions.push_back({"degree-divides",
                                 da % db == 0 ? ConditionStatus::holds : ConditionStatus::fails,
                                 std::to_string(db) + " | " + std::to_string(da)});
    }
  }

  bool any_fail = false, all_hold = true;
  for (const ConditionReport& c : cert.conditions) {
    any_fail = any_fail || c.status == ConditionStatus::fails;
    all_hold = all_hold && c.status == ConditionStatus::holds;
  }
  if (any_fail) {
    cert.verdict = Verdict::refuted;
    cert.method = c1.status == ConditionStatus::fails ? "degree" : "counterexample";
    for (const ConditionReport& c : cert.conditions)
      if (c.status == ConditionStatus::fails) {
        cert.witness = c.name + ": " + c.detail;
        break;
      }
  } else if (all_hold) {
    cert.verdict = Verdict::certified;
    cert.method = "omega-bound";
  } else {
    cert.method = db == 1 ? "degree-vacuous" : "omega-bound";
  }
  return cert;
}

}  // namespace padicval
