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

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "padicval/krasner.hpp"
#include "padicval/minpoly.hpp"
#include "padicval/tower.hpp"

namespace padicval {

struct LevelSpec {
  long f = 1;
  long e = 1;
  long degree() const { return e * f; }
  friend bool operator==(const LevelSpec&, const LevelSpec&) = default;
};

/// Declared behaviour of the ramification chain beyond the window.
enum class RamificationTail { undeclared, stationary, unbounded };

/// Declared behaviour of the gauge beyond the window.
struct GaugeTail {
  enum class Kind { undeclared, unbounded, bounded };
  Kind kind = Kind::undeclared;
  Rat sup;
  friend bool operator==(const GaugeTail&, const GaugeTail&) = default;
};

inline const char* tail_name(RamificationTail t) {
  switch (t) {
    case RamificationTail::undeclared: return "undeclared";
    case RamificationTail::stationary: return "stationary";
    case RamificationTail::unbounded: return "unbounded";
  }
  return "?";
}

struct SequenceSpec {
  Integer p = 2;
  std::vector<LevelSpec> levels{LevelSpec{}};  // levels[0] is Q_p
  std::optional<std::vector<Rat>> lambda;      // gauge floor lambda_0, lambda_1, ...
  std::size_t truncation = 0;                  // N: terms t_0 .. t_N
  unsigned precision = 64;
  std::uint64_t seed = 0;
  RamificationTail e_tail = RamificationTail::undeclared;
  GaugeTail gauge_tail;

  friend bool operator==(const SequenceSpec&, const SequenceSpec&) = default;

  void validate() const {
    require_prime(p);
    if (levels.empty() || levels[0] != LevelSpec{})
      fail(ErrorCode::invalid_argument, "level 0 must be (f, e) = (1, 1)");
    if (truncation == 0 || truncation >= levels.size())
      fail(ErrorCode::invalid_argument, "truncation must lie in 1.." + std::to_string(levels.size() - 1));
    if (precision < 2) fail(ErrorCode::invalid_argument, "precision must be at least 2");
    for (std::size_t n = 1; n < levels.size(); ++n) {
      const LevelSpec& a = levels[n - 1];
      const LevelSpec& b = levels[n];
      if (b.f < 1 || b.e < 1 || b.f % a.f != 0 || b.e % a.e != 0)
        fail(ErrorCode::invalid_argument, "level " + std::to_string(n) + " does not divide-extend level " +
                                              std::to_string(n - 1));
      if (b.degree() <= a.degree())
        fail(ErrorCode::invalid_argument, "degree must increase at level " + std::to_string(n));
    }
    if (lambda) {
      if (lambda->size() < truncation)
        fail(ErrorCode::invalid_argument, "gauge floor needs at least " + std::to_string(truncation) + " entries");
      for (std::size_t i = 1; i < lambda->size(); ++i)
        if ((*lambda)[i] <= (*lambda)[i - 1])
          fail(ErrorCode::invalid_argument, "gauge floor must be strictly increasing");
    }
    if (gauge_tail.kind == GaugeTail::Kind::bounded && lambda && !lambda->empty() &&
        lambda->back() >= gauge_tail.sup)
      fail(ErrorCode::invalid_argument, "gauge floor exceeds the declared gauge bound");
    if (gauge_tail.kind == GaugeTail::Kind::bounded && e_tail == RamificationTail::stationary)
      fail(ErrorCode::invalid_argument,
           "a stationary ramification tail leaves a discrete value group, so the gauge cannot stay bounded");
  }
};

/// Per-level data. e and f are 0 when unknown (raw sequences).
struct LevelRecord {
  long degree = 0;
  long e = 0;
  long f = 0;
  std::size_t steps = 0;                   // prefix of the tower holding t_n
  std::optional<TowerElement> s;           // primitive element of K_n
  std::optional<long> a_exponent;          // a_n = p^k
  std::optional<ExtVal> omega;             // omega(t_n)
  std::optional<PairCertificate> certificate;  // for (t_n, delta_n)
};

struct StackedSequence {
  std::optional<SequenceSpec> spec;
  TowerField tower;
  std::vector<TowerElement> terms;  // in `tower`
  std::vector<ExtVal> gauge;        // delta_n = v(t_{n+1} - t_n); inf when the difference vanishes at precision
  std::vector<LevelRecord> records;

  std::size_t truncation() const { return terms.size() - 1; }
  TowerField level_field(std::size_t n) const { return tower.prefix(records.at(n).steps); }
  TowerElement term_at_level(std::size_t n) const {
    return tower.restrict_to(terms.at(n), records.at(n).steps);
  }
};

namespace detail {

inline ExtVal gauge_entry(const TowerElement& a, const TowerElement& b) {
  ValuationBound v = (b - a).valuation_bound();
  return v.exact ? ExtVal(v.value) : ExtVal::infinity();
}

inline std::optional<std::size_t> try_degree(const TowerElement& x) {
  try {
    return degree_over_qp(x);
  } catch (const PrecisionError&) {
    return std::nullopt;
  }
}

}  // namespace detail

/// t_0 = 0, t_n = a_n s_n + t_{n-1} with s_n primitive in K_n and
/// v(a_n) > max(omega(t_{n-1}) - v(s_n), lambda_{n-1} - v(s_n)).
inline StackedSequence build_prescribed(const SequenceSpec& spec, unsigned max_perturbations = 32) {
  spec.validate();
  const std::size_t big_n = spec.truncation;
  std::mt19937_64 rng(spec.seed);
  TowerField k = TowerField::base(spec.p, spec.precision);
  std::vector<TowerElement> terms{k.zero()};
  std::vector<LevelRecord> records(big_n + 1);
  records[0].degree = 1;
  records[0].e = 1;
  records[0].f = 1;
  records[0].omega = ExtVal::neg_infinity();

  for (std::size_t n = 1; n <= big_n; ++n) {
    const LevelSpec& prev = spec.levels[n - 1];
    const LevelSpec& cur = spec.levels[n];
    if (cur.f / prev.f > 1) k = make_unramified_step(k, static_cast<std::size_t>(cur.f / prev.f));
    if (cur.e / prev.e > 1) k = make_default_eisenstein_step(k, static_cast<std::size_t>(cur.e / prev.e));
    const std::size_t dn = static_cast<std::size_t>(cur.degree());
    if (k.degree() != dn) fail(ErrorCode::contract_violation, "tower degree differs from level degree");

    const TowerElement base_s = k.uniformizer() + k.unramified_generator();
    TowerElement s = base_s;
    bool found = false;
    bool precision_trouble = false;
    std::uniform_int_distribution<unsigned long> digit(0, spec.p.get_ui() - 1);
    for (unsigned attempt = 0; attempt <= max_perturbations; ++attempt) {
      if (attempt > 0) {
        std::vector<Integer> r(k.degree());
        for (auto& c : r) c = digit(rng);
        s = base_s + k.element(std::move(r));
      }
      auto deg = detail::try_degree(s);
      if (!deg) precision_trouble = true;
      if (deg && *deg == dn && s.valuation_bound().exact) {
        found = true;
        break;
      }
    }
    if (!found) {
      if (precision_trouble)
        throw PrecisionError(ErrorCode::precision_insufficient,
                             "primitive element search at level " + std::to_string(n) + " hit precision limits",
                             2 * spec.precision);
      fail(ErrorCode::primitive_search_exhausted,
           "no primitive element found at level " + std::to_string(n) + " after " +
               std::to_string(max_perturbations) + " perturbations");
    }

    const TowerElement prev_t = k.embed(terms.back());
    const Rat vs = s.valuation().value();
    const ExtVal w = *records[n - 1].omega;
    ExtVal threshold = w - vs;
    if (spec.lambda) threshold = std::max(threshold, ExtVal((*spec.lambda)[n - 1] - vs));
    long a_exp = 0;
    if (threshold.is_finite()) a_exp = std::max<long>(0, threshold.value().floor().get_si() + 1);
    if (a_exp >= static_cast<long>(spec.precision))
      throw PrecisionError(ErrorCode::precision_insufficient,
                           "a_" + std::to_string(n) + " = p^" + std::to_string(a_exp) + " exceeds precision",
                           2 * spec.precision);
    const TowerElement t = ipow(spec.p, static_cast<unsigned long>(a_exp)) * s + prev_t;
    const auto dt = detail::try_degree(t);
    if (!dt || *dt != dn)
      throw PrecisionError(ErrorCode::precision_insufficient,
                           "could not certify the degree of t_" + std::to_string(n), 2 * spec.precision);

    LevelRecord& rec = records[n];
    rec.degree = cur.degree();
    rec.e = cur.e;
    rec.f = cur.f;
    rec.steps = k.num_steps();
    rec.s = s;
    rec.a_exponent = a_exp;
    if (n < big_n) rec.omega = omega(t);
    terms.push_back(t);
  }

  StackedSequence seq;
  seq.spec = spec;
  seq.tower = k;
  for (TowerElement& t : terms) seq.terms.push_back(k.embed(t));
  for (LevelRecord& r : records)
    if (r.s) r.s = k.embed(*r.s);
  for (std::size_t n = 0; n < big_n; ++n) {
    ExtVal d = detail::gauge_entry(seq.terms[n], seq.terms[n + 1]);
    if (!d.is_finite())
      throw PrecisionError(ErrorCode::precision_insufficient,
                           "gauge delta_" + std::to_string(n) + " exceeds precision", 2 * spec.precision);
    seq.gauge.push_back(d);
    records[n].certificate = certify_minimal_pair(seq.terms[n], d.value());
  }
  seq.records = std::move(records);
  return seq;
}

/// A sequence given by explicit terms. All terms must come from prefixes of
/// one tower.
inline StackedSequence sequence_from_terms(const std::vector<TowerElement>& terms) {
  if (terms.size() < 2) fail(ErrorCode::invalid_argument, "a sequence needs at least two terms");
  TowerField big = terms[0].field();
  for (const TowerElement& t : terms)
    if (t.field().num_steps() > big.num_steps()) big = t.field();
  StackedSequence seq;
  seq.tower = big;
  for (const TowerElement& t : terms) {
    if (!big.has_prefix(t.field())) fail(ErrorCode::contract_violation, "terms do not share a tower");
    seq.terms.push_back(big.embed(t));
  }
  for (const TowerElement& t : seq.terms) {
    LevelRecord r;
    r.steps = big.level_of(t);
    if (auto d = detail::try_degree(t)) {
      r.degree = static_cast<long>(*d);
      if (auto inv = subfield_invariants(t)) {
        r.e = inv->e;
        r.f = inv->f;
      }
    }
    seq.records.push_back(std::move(r));
  }
  for (std::size_t n = 0; n + 1 < seq.terms.size(); ++n)
    seq.gauge.push_back(detail::gauge_entry(seq.terms[n], seq.terms[n + 1]));
  return seq;
}

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct StackedReport {
  std::vector<CheckResult> checks;
  std::vector<PairCertificate> distinguished;  // (t_n, t_{n+1})

  bool ok() const {
    for (const CheckResult& c : checks)
      if (!c.passed) return false;
    return true;
  }
  const CheckResult* find(const std::string& name) const {
    for (const CheckResult& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

inline StackedReport verify_stacked(const StackedSequence& seq) {
  StackedReport rep;
  const std::size_t big_n = seq.truncation();

  CheckResult degrees{"degrees", true, ""};
  std::vector<long> deg;
  for (std::size_t n = 0; n <= big_n; ++n) {
    auto d = detail::try_degree(seq.terms[n]);
    deg.push_back(d ? static_cast<long>(*d) : -1);
    if (!d) {
      degrees.passed = false;
      degrees.detail = "degree of t_" + std::to_string(n) + " undetermined at precision";
      break;
    }
    if (seq.spec && deg[n] != seq.spec->levels[n].degree()) {
      degrees.passed = false;
      degrees.detail = "deg t_" + std::to_string(n) + " = " + std::to_string(deg[n]) + ", declared " +
                       std::to_string(seq.spec->levels[n].degree());
      break;
    }
    if (n > 0 && deg[n] <= deg[n - 1]) {
      degrees.passed = false;
      degrees.detail = "deg t_" + std::to_string(n) + " = " + std::to_string(deg[n]) +
                       " does not exceed deg t_" + std::to_string(n - 1) + " = " + std::to_string(deg[n - 1]);
      break;
    }
  }
  if (degrees.passed) {
    for (std::size_t n = 0; n <= big_n; ++n) degrees.detail += (n ? "," : "") + std::to_string(deg[n]);
  }
  rep.checks.push_back(degrees);

  CheckResult gauge{"gauge", true, ""};
  for (std::size_t n = 0; n < seq.gauge.size(); ++n) {
    if (!seq.gauge[n].is_finite()) {
      gauge.passed = false;
      gauge.detail = "delta_" + std::to_string(n) + " is not finite at precision";
      break;
    }
    if (n > 0 && seq.gauge[n] <= seq.gauge[n - 1]) {
      gauge.passed = false;
      gauge.detail = "delta_" + std::to_string(n) + " = " + seq.gauge[n].str() + " <= delta_" +
                     std::to_string(n - 1) + " = " + seq.gauge[n - 1].str();
      break;
    }
  }
  if (gauge.passed)
    for (std::size_t n = 0; n < seq.gauge.size(); ++n) gauge.detail += (n ? "," : "") + seq.gauge[n].str();
  rep.checks.push_back(gauge);

  CheckResult pairs{"minimal-pairs", true, ""};
  for (std::size_t n = 0; n < seq.gauge.size() && pairs.passed; ++n) {
    if (!seq.gauge[n].is_finite()) {
      pairs.passed = false;
      pairs.detail = "no finite delta_" + std::to_string(n);
      break;
    }
    try {
      PairCertificate c = certify_minimal_pair(seq.terms[n], seq.gauge[n].value());
      if (c.verdict != Verdict::certified) {
        pairs.passed = false;
        pairs.detail = "(t_" + std::to_string(n) + ", " + seq.gauge[n].str() + ") not certified";
      }
    } catch (const PrecisionError& e) {
      pairs.passed = false;
      pairs.detail = e.what();
    }
  }
  rep.checks.push_back(pairs);

  CheckResult pcv{"pseudo-convergence", true, ""};
  std::size_t checked = 0;
  for (std::size_t n = 0; n <= big_n && pcv.passed; ++n) {
    for (std::size_t m = n + 1; m <= big_n; ++m) {
      ++checked;
      ValuationBound v = (seq.terms[m] - seq.terms[n]).valuation_bound();
      if (!v.exact || ExtVal(v.value) != seq.gauge[n]) {
        pcv.passed = false;
        pcv.detail = "v(t_" + std::to_string(m) + " - t_" + std::to_string(n) + ") = " +
                     (v.exact ? v.value.str() : ">=" + v.value.str()) + ", delta_" + std::to_string(n) +
                     " = " + seq.gauge[n].str();
        break;
      }
    }
  }
  if (pcv.passed) pcv.detail = std::to_string(checked) + " pairs";
  rep.checks.push_back(pcv);

  CheckResult dist{"condition-ii", true, "unknown"};
  for (std::size_t n = 0; n < big_n; ++n) {
    try {
      PairCertificate c = check_distinguished_necessary(seq.terms[n], seq.terms[n + 1]);
      if (c.verdict == Verdict::refuted) {
        dist.passed = false;
        dist.detail = "pair " + std::to_string(n) + " refuted: " + c.witness.value_or("");
      }
      rep.distinguished.push_back(std::move(c));
    } catch (const PrecisionError& e) {
      dist.passed = false;
      dist.detail = e.what();
      break;
    }
  }
  rep.checks.push_back(dist);
  return rep;
}

struct Classification {
  enum class Kind { dvr_discrete, non_discrete, indeterminate };
  Kind kind = Kind::indeterminate;
  long e = 0;

  std::string str() const {
    switch (kind) {
      case Kind::dvr_discrete: return "DVRDiscrete(" + std::to_string(e) + ")";
      case Kind::non_discrete: return "NonDiscrete";
      case Kind::indeterminate: return "Indeterminate";
    }
    return "?";
  }
};

/// Read off the declared ramification tail, never the window.
inline Classification classify(const StackedSequence& seq) {
  Classification c;
  if (!seq.spec) return c;
  switch (seq.spec->e_tail) {
    case RamificationTail::stationary:
      c.kind = Classification::Kind::dvr_discrete;
      c.e = seq.spec->levels.back().e;
      break;
    case RamificationTail::unbounded:
      c.kind = Classification::Kind::non_discrete;
      break;
    case RamificationTail::undeclared:
      break;
  }
  return c;
}

struct BreadthReport {
  enum class Kind { zero, nonzero, undetermined };
  Kind kind = Kind::undetermined;
  std::optional<ExtVal> window_sup;  // last gauge entry
  std::optional<Rat> bound;          // declared sup of the gauge
  bool window_consistent = true;     // window gauge stays below the declared sup

  std::string str() const {
    std::string s = "sup of window gauge: " + (window_sup ? window_sup->str() : std::string("none"));
    switch (kind) {
      case Kind::zero: s += "; Br = {0}, Cauchy"; break;
      case Kind::nonzero: s += "; Br contains {v > " + bound->str() + "}, not Cauchy"; break;
      case Kind::undetermined: s += "; Br undetermined (no declared continuation)"; break;
    }
    if (!window_consistent) s += "; window gauge exceeds the declared bound";
    return s;
  }
};

inline BreadthReport breadth_report(const StackedSequence& seq) {
  BreadthReport r;
  if (!seq.gauge.empty()) r.window_sup = seq.gauge.back();
  if (!seq.spec) return r;
  const GaugeTail& g = seq.spec->gauge_tail;
  if (g.kind == GaugeTail::Kind::unbounded) {
    r.kind = BreadthReport::Kind::zero;
  } else if (g.kind == GaugeTail::Kind::bounded) {
    r.kind = BreadthReport::Kind::nonzero;
    r.bound = g.sup;
    if (r.window_sup && *r.window_sup > ExtVal(g.sup)) r.window_consistent = false;
  }
  return r;
}

}  // namespace padicval
