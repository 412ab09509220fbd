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

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "padicval/equivalence.hpp"
#include "padicval/minpoly.hpp"
#include "padicval/stacked.hpp"
#include "padicval/valuation_domain.hpp"

namespace padicval {

/// A point given through a stacked sequence; e_p is declared and must match
/// the last level when the ramification chain is declared stationary.
struct SequenceBacked {
  SequenceSpec spec;
  std::optional<long> declared_e;
};

/// A point of a finite extension, with transcendence over Q declared.
struct AlgebraicTranscendental {
  TowerElement x;
  bool transcendental_over_q = true;
};

struct ElementSpec {
  std::string label;
  std::variant<SequenceBacked, AlgebraicTranscendental> body;

  bool is_sequence() const { return std::holds_alternative<SequenceBacked>(body); }
  const SequenceBacked& sequence() const { return std::get<SequenceBacked>(body); }
  const AlgebraicTranscendental& point() const { return std::get<AlgebraicTranscendental>(body); }

  const Integer& p() const { return is_sequence() ? sequence().spec.p : point().x.field().p(); }

  /// Ramification index e_p, or nullopt when it is unbounded or unknown.
  std::optional<long> ramification() const {
    if (is_sequence()) {
      const SequenceBacked& s = sequence();
      if (s.spec.e_tail != RamificationTail::stationary) return std::nullopt;
      const long last = s.spec.levels.back().e;
      if (s.declared_e && *s.declared_e != last)
        fail(ErrorCode::invalid_argument, label + ": declared e_p = " + std::to_string(*s.declared_e) +
                                              " but the stationary chain ends at " + std::to_string(last));
      return last;
    }
    auto inv = subfield_invariants(point().x);
    if (!inv) return std::nullopt;
    return inv->e;
  }

  StackedSequence build() const { return build_prescribed(sequence().spec); }

  ValuationHandle handle() const {
    if (is_sequence()) return ValuationHandle::over_sequence(build());
    return ValuationHandle::over_point(point().x, point().transcendental_over_q);
  }
};

struct PrimeEntry {
  Integer p;
  std::vector<ElementSpec> elements;
  bool declared_nonconjugate = false;
};

struct IntConfig {
  std::vector<PrimeEntry> primes;  // the finite support

  void validate() const {
    std::vector<Integer> seen;
    for (const PrimeEntry& e : primes) {
      require_prime(e.p);
      for (const Integer& q : seen)
        if (q == e.p) fail(ErrorCode::invalid_argument, "prime " + e.p.get_str() + " listed twice");
      seen.push_back(e.p);
      if (e.elements.empty()) fail(ErrorCode::invalid_argument, "no element at prime " + e.p.get_str());
      for (const ElementSpec& x : e.elements)
        if (x.p() != e.p)
          fail(ErrorCode::invalid_argument, x.label + " is not over " + e.p.get_str());
    }
  }
};

enum class Conjugacy { conjugate, not_conjugate, indistinguishable };

inline const char* conjugacy_name(Conjugacy c) {
  switch (c) {
    case Conjugacy::conjugate: return "Conjugate";
    case Conjugacy::not_conjugate: return "NotConjugate";
    case Conjugacy::indistinguishable: return "IndistinguishableAtTruncation";
  }
  return "?";
}

/// Points: equality of minimal polynomials at the common precision. Sequences:
/// differing invariants refute conjugacy. A sequence limit has unbounded
/// degree over Q_p, so it is never conjugate to a point of a finite extension.
inline Conjugacy conjugacy_check(const ElementSpec& a, const ElementSpec& b) {
  if (a.p() != b.p()) fail(ErrorCode::invalid_argument, "elements over different primes");
  if (a.is_sequence() != b.is_sequence()) return Conjugacy::not_conjugate;
  if (!a.is_sequence()) {
    MinimalPolynomial ma = minimal_polynomial(a.point().x);
    MinimalPolynomial mb = minimal_polynomial(b.point().x);
    if (ma.degree() != mb.degree()) return Conjugacy::not_conjugate;
    const Integer m = ipow(a.p(), std::min(ma.precision, mb.precision));
    return detail::congruent(ma.poly, mb.poly, m) ? Conjugacy::conjugate : Conjugacy::not_conjugate;
  }
  EquivalenceResult r = equivalence_check(a.build(), b.build());
  return r.kind == EquivalenceResult::Kind::not_equivalent ? Conjugacy::not_conjugate
                                                           : Conjugacy::indistinguishable;
}

struct DedekindVerdict {
  bool dedekind = false;
  std::string reason;
  std::vector<std::string> notes;

  std::string str() const { return dedekind ? "Dedekind" : "NotDedekind(" + reason + ")"; }
};

inline DedekindVerdict classify_dedekind(const IntConfig& cfg) {
  cfg.validate();
  DedekindVerdict v;
  for (const PrimeEntry& pe : cfg.primes) {
    for (const ElementSpec& x : pe.elements) {
      if (x.is_sequence()) {
        switch (x.sequence().spec.e_tail) {
          case RamificationTail::unbounded:
            v.reason = "bounded ramification violated by " + x.label;
            return v;
          case RamificationTail::undeclared:
            v.reason = "bounded ramification not declared for " + x.label;
            return v;
          case RamificationTail::stationary:
            (void)x.ramification();
            break;
        }
      } else {
        if (!x.point().transcendental_over_q) {
          v.reason = "rank-2 valuation overring: " + x.label + " is declared algebraic over Q";
          return v;
        }
        if (!x.ramification()) {
          v.reason = "ramification of " + x.label + " is unknown";
          return v;
        }
      }
    }
  }
  v.dedekind = true;
  v.notes.push_back("finite support: factorizability reduces to per-polynomial witnesses");
  v.notes.push_back("each listed element is taken as one Galois orbit representative");
  return v;
}

struct ClassGroupSummand {
  Integer p;
  long torsion = 1;
  long free_rank = 0;
  friend bool operator==(const ClassGroupSummand&, const ClassGroupSummand&) = default;
};

struct ClassGroupDesc {
  std::vector<ClassGroupSummand> summands;  // support order

  bool trivial() const {
    for (const ClassGroupSummand& s : summands)
      if (s.torsion != 1 || s.free_rank != 0) return false;
    return true;
  }

  /// Torsion parts in support order, then the total free part;
  /// e.g. "Z/2Z (+) Z". The trivial group prints as "0".
  std::string str() const {
    std::vector<std::string> parts;
    long rank = 0;
    for (const ClassGroupSummand& s : summands) {
      if (s.torsion > 1) parts.push_back("Z/" + std::to_string(s.torsion) + "Z");
      rank += s.free_rank;
    }
    if (rank == 1) parts.push_back("Z");
    if (rank > 1) parts.push_back("Z^" + std::to_string(rank));
    if (parts.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " (+) " : "") + parts[i];
    return out;
  }
};

namespace detail {

/// Orbit representatives at one prime; conjugate duplicates are merged.
inline std::vector<long> orbit_ramifications(const PrimeEntry& pe) {
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < pe.elements.size(); ++i) {
    bool duplicate = false;
    for (std::size_t j : reps) {
      if (pe.declared_nonconjugate) break;
      Conjugacy c = conjugacy_check(pe.elements[j], pe.elements[i]);
      if (c == Conjugacy::conjugate) {
        duplicate = true;
        break;
      }
      if (c == Conjugacy::indistinguishable)
        fail(ErrorCode::unverified_nonconjugacy, pe.elements[j].label + " and " + pe.elements[i].label +
                                                     " could not be separated; declare non-conjugacy");
    }
    if (!duplicate) reps.push_back(i);
  }
  std::vector<long> es;
  for (std::size_t i : reps) es.push_back(*pe.elements[i].ramification());
  return es;
}

}  // namespace detail

/// Per prime Z/gcd(e_i)Z (+) Z^(n-1) over n orbits; the total is their sum.
inline ClassGroupDesc class_group(const IntConfig& cfg) {
  DedekindVerdict v = classify_dedekind(cfg);
  if (!v.dedekind) fail(ErrorCode::domain_error, "not a Dedekind domain: " + v.reason);
  ClassGroupDesc g;
  for (const PrimeEntry& pe : cfg.primes) {
    std::vector<long> es = detail::orbit_ramifications(pe);
    long t = 0;
    for (long e : es) t = std::gcd(t, e);
    g.summands.push_back({pe.p, t, static_cast<long>(es.size()) - 1});
  }
  return g;
}

inline bool is_pid(const IntConfig& cfg) { return class_group(cfg).trivial(); }

struct FactorizabilityWitness {
  bool found = false;
  Integer n = 1;
  Integer d = 1;
  std::string reason;  // when not found
  std::vector<std::pair<Integer, Rat>> values;  // v_p(g(alpha)) per prime

  std::string str() const {
    return found ? "(n, d) = (" + n.get_str() + ", " + d.get_str() + ")" : "CannotWitness(" + reason + ")";
  }
};

/// (n, d) with g(alpha)^n / d a unit at every element, or CannotWitness when
/// two elements at one prime give g different values.
inline FactorizabilityWitness factorizability_witness(const IntConfig& cfg, const Poly<Integer>& g) {
  cfg.validate();
  if (g.is_zero()) fail(ErrorCode::domain_error, "zero polynomial has no witness");
  const RationalFunction phi(to_rat_poly(g));
  FactorizabilityWitness w;
  Integer n = 1;
  for (const PrimeEntry& pe : cfg.primes) {
    std::optional<Rat> common;
    for (const ElementSpec& x : pe.elements) {
      const Rat v = valuate(x.handle(), phi);
      if (common && *common != v) {
        w.reason = "v_" + pe.p.get_str() + " takes values " + common->str() + " and " + v.str();
        return w;
      }
      common = v;
    }
    w.values.emplace_back(pe.p, *common);
    n = lcm(n, common->den());
  }
  Integer d = 1;
  for (const auto& [p, v] : w.values) {
    const Rat e = v * Rat(n);
    if (e.sign() < 0)
      fail(ErrorCode::domain_error, "g takes negative value " + v.str() + " at " + p.get_str());
    d *= ipow(p, e.num().get_ui());
  }
  w.found = true;
  w.n = n;
  w.d = d;
  return w;
}

}  // namespace padicval
