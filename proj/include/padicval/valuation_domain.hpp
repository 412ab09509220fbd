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
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "padicval/expr.hpp"
#include "padicval/minpoly.hpp"
#include "padicval/stacked.hpp"
#include "padicval/tower.hpp"

namespace padicval {

/// num / den over Q with den monic and gcd(num, den) = 1.
class RationalFunction {
 public:
  RationalFunction() : num_(Poly<Rat>::constant(Rat(0))), den_(Poly<Rat>::constant(Rat(1))) {}
  RationalFunction(Poly<Rat> num)  // NOLINT(google-explicit-constructor)
      : RationalFunction(std::move(num), Poly<Rat>::constant(Rat(1))) {}
  RationalFunction(Poly<Rat> num, Poly<Rat> den) {
    if (den.is_zero()) fail(ErrorCode::invalid_argument, "zero denominator");
    if (num.is_zero()) {
      num_ = std::move(num);
      den_ = Poly<Rat>::constant(Rat(1));
      return;
    }
    Poly<Rat> g = gcd(num, den);
    if (g.degree() > 0) {
      num = divmod(num, g).first;
      den = divmod(den, g).first;
    }
    const Rat lead = den.leading();
    const Rat inv = Rat(1) / lead;
    num_ = inv * num;
    den_ = inv * den;
  }

  const Poly<Rat>& num() const { return num_; }
  const Poly<Rat>& den() const { return den_; }
  int degree() const { return std::max(num_.degree(), den_.degree()); }
  bool is_polynomial() const { return den_.degree() == 0; }

  std::string str() const { return to_string(num_) + " / " + to_string(den_); }

  /// "num / den": the separating slash has whitespace on both sides; a slash
  /// between digits is part of a rational literal. The symbol p stands for
  /// `prime` when given.
  static RationalFunction parse(std::string_view text, const std::optional<Integer>& prime = std::nullopt,
                                std::size_t line = 1) {
    std::size_t split = std::string_view::npos;
    int depth = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char c = text[i];
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (c == '/' && depth == 0 && i > 0 && i + 1 < text.size() &&
          std::isspace(static_cast<unsigned char>(text[i - 1])) &&
          std::isspace(static_cast<unsigned char>(text[i + 1]))) {
        if (split != std::string_view::npos)
          throw ParseError("more than one numerator/denominator separator", line, i + 1);
        split = i;
      }
    }
    if (split == std::string_view::npos) return RationalFunction(parse_rat_poly(text, prime, line));
    Poly<Rat> num = parse_rat_poly(text.substr(0, split), prime, line);
    Poly<Rat> den;
    try {
      den = parse_rat_poly(text.substr(split + 1), prime, line);
    } catch (const ParseError& e) {
      std::string msg = e.what();
      msg = msg.substr(0, msg.rfind(" (line"));
      throw ParseError(msg, line, e.column() + split + 1);
    }
    if (den.is_zero()) throw ParseError("zero denominator", line, split + 1);
    return RationalFunction(std::move(num), std::move(den));
  }

  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  Poly<Rat> num_;
  Poly<Rat> den_;
};

namespace detail {

/// f(t) written as p^content * y with y computed from a p-primitive integral
/// rescaling of f.
struct ScaledValue {
  long content = 0;
  TowerElement y;
};

inline ScaledValue evaluate_scaled(const Poly<Rat>& f, const TowerElement& t) {
  const TowerField& k = t.field();
  if (f.is_zero()) fail(ErrorCode::domain_error, "evaluation of the zero polynomial");
  std::optional<Rat> content;
  for (const Rat& c : f.coeffs()) {
    if (c.is_zero()) continue;
    Rat v = vp_rational(c, k.p()).value();
    if (!content || v < *content) content = v;
  }
  const long cv = content->num().get_si();
  const Rat shift = cv >= 0 ? Rat(Integer(1), ipow(k.p(), static_cast<unsigned long>(cv)))
                            : Rat(ipow(k.p(), static_cast<unsigned long>(-cv)));
  TowerElement y = k.zero();
  for (std::size_t i = f.size(); i-- > 0;)
    y = y * t + k.from_integer(reduce_p_integral(f[i] * shift, k.modulus()));
  return {cv, y};
}

inline Rat scaled_valuation(const ScaledValue& s, bool is_denominator) {
  ValuationBound b = s.y.valuation_bound();
  if (!b.exact) {
    if (is_denominator)
      throw PrecisionError(ErrorCode::denominator_vanishes, "denominator vanishes at the point",
                           2 * s.y.field().precision());
    throw PrecisionError(ErrorCode::below_precision, "value vanishes at precision",
                         2 * s.y.field().precision());
  }
  return Rat(s.content) + b.value;
}

/// Unit part y * pi^j / p^m with m = ceil(v(y)); j = e (m - v(y)).
inline TowerElement unit_part(const TowerElement& y, const Rat& v, long j) {
  const TowerField& k = y.field();
  TowerElement z = y;
  const TowerElement pi = k.uniformizer();
  for (long i = 0; i < j; ++i) z = z * pi;
  const Rat m = v + Rat(Integer(j), Integer(k.e()));
  if (!m.is_integer() || m.num() >= k.precision())
    throw PrecisionError(ErrorCode::precision_insufficient, "residue lost below precision", 2 * k.precision());
  return z.divide_by_p_power(m.num().get_ui());
}

}  // namespace detail

struct AlgebraicPoint {
  TowerElement x;
  bool transcendental_over_q = false;  // declared, never inferred
};

class ValuationHandle {
 public:
  enum class Coefficients { rationals, padic };

  static ValuationHandle over_sequence(StackedSequence seq, Coefficients c = Coefficients::rationals) {
    ValuationHandle h;
    h.backing_ = std::make_shared<const StackedSequence>(std::move(seq));
    h.coeffs_ = c;
    return h;
  }

  static ValuationHandle over_point(TowerElement x, bool transcendental_over_q,
                                    Coefficients c = Coefficients::rationals) {
    (void)minimal_polynomial(x);
    ValuationHandle h;
    h.backing_ = AlgebraicPoint{std::move(x), transcendental_over_q};
    h.coeffs_ = c;
    return h;
  }

  bool is_sequence() const { return std::holds_alternative<std::shared_ptr<const StackedSequence>>(backing_); }
  const StackedSequence& sequence() const {
    if (!is_sequence()) fail(ErrorCode::contract_violation, "handle is not sequence-backed");
    return *std::get<std::shared_ptr<const StackedSequence>>(backing_);
  }
  const AlgebraicPoint& point() const {
    if (is_sequence()) fail(ErrorCode::contract_violation, "handle is not point-backed");
    return std::get<AlgebraicPoint>(backing_);
  }
  Coefficients coefficients() const { return coeffs_; }
  const Integer& p() const { return is_sequence() ? sequence().tower.p() : point().x.field().p(); }

 private:
  ValuationHandle() = default;
  std::variant<std::shared_ptr<const StackedSequence>, AlgebraicPoint> backing_;
  Coefficients coeffs_ = Coefficients::rationals;
};

struct ValuationResult {
  Rat value;
  std::size_t level = 0;                // first admissible level (sequences)
  std::vector<std::size_t> rechecked;  // later levels that agreed
};

namespace detail {

inline Rat valuation_at(const RationalFunction& phi, const TowerElement& t) {
  Rat vn = scaled_valuation(evaluate_scaled(phi.num(), t), false);
  Rat vd = scaled_valuation(evaluate_scaled(phi.den(), t), true);
  return vn - vd;
}

inline std::size_t admissible_level(const StackedSequence& seq, const RationalFunction& phi) {
  const long need = phi.degree();
  for (std::size_t n = 0; n < seq.records.size(); ++n)
    if (seq.records[n].degree > need) return n;
  fail(ErrorCode::window_too_short, "no level of degree above " + std::to_string(need) + " in the window");
}

inline Rat sequence_valuation_at(const StackedSequence& seq, const RationalFunction& phi, std::size_t n) {
  try {
    return valuation_at(phi, seq.term_at_level(n));
  } catch (const PrecisionError& e) {
    if (e.code() == ErrorCode::denominator_vanishes || e.code() == ErrorCode::below_precision)
      throw PrecisionError(ErrorCode::precision_insufficient,
                           std::string(e.what()) + " at level " + std::to_string(n), e.retry_precision());
    throw;
  }
}

}  // namespace detail

/// w(phi): at the first level n with d_n > deg phi, re-checked at n+1 and n+2
/// when the window has them. For a point, v_p(phi(x)).
inline ValuationResult valuate_detailed(const ValuationHandle& h, const RationalFunction& phi) {
  if (phi.num().is_zero()) fail(ErrorCode::domain_error, "valuation of zero");
  ValuationResult r;
  if (!h.is_sequence()) {
    r.value = detail::valuation_at(phi, h.point().x);
    return r;
  }
  const StackedSequence& seq = h.sequence();
  r.level = detail::admissible_level(seq, phi);
  r.value = detail::sequence_valuation_at(seq, phi, r.level);
  for (std::size_t m = r.level + 1; m <= std::min(r.level + 2, seq.truncation()); ++m) {
    Rat again = detail::sequence_valuation_at(seq, phi, m);
    if (again != r.value)
      fail(ErrorCode::stabilization_failure, "value " + r.value.str() + " at level " + std::to_string(r.level) +
                                                 " but " + again.str() + " at level " + std::to_string(m));
    r.rechecked.push_back(m);
  }
  return r;
}

inline Rat valuate(const ValuationHandle& h, const RationalFunction& phi) { return valuate_detailed(h, phi).value; }

/// w(f) for f with coefficients in the tower of the handle, e.g. X - t_n.
/// Read at the first level n with d_n > deg f times the degree of the tower
/// level holding the coefficients, re-checked at n+1 and n+2.
inline ValuationResult valuate_detailed(const ValuationHandle& h, const Poly<TowerElement>& f) {
  if (f.is_zero()) fail(ErrorCode::domain_error, "valuation of zero");
  const TowerField& big = h.is_sequence() ? h.sequence().tower : h.point().x.field();
  std::size_t steps = 0;
  for (const TowerElement& c : f.coeffs()) {
    if (!big.has_prefix(c.field())) fail(ErrorCode::contract_violation, "coefficient outside the handle's tower");
    steps = std::max(steps, big.level_of(big.embed(c)));
  }
  std::vector<TowerElement> coeffs;
  for (const TowerElement& c : f.coeffs()) coeffs.push_back(big.embed(c));
  const Poly<TowerElement> g(std::move(coeffs));
  auto value_at = [&](const TowerElement& t, std::size_t n) {
    ValuationBound b = g(t).valuation_bound();
    if (!b.exact)
      throw PrecisionError(ErrorCode::precision_insufficient,
                           "f vanishes at precision " + std::to_string(big.precision()) + " at level " + std::to_string(n),
                           2 * big.precision());
    return b.value;
  };
  ValuationResult r;
  if (!h.is_sequence()) {
    r.value = value_at(h.point().x, 0);
    return r;
  }
  const StackedSequence& seq = h.sequence();
  const long need = static_cast<long>(f.degree()) * static_cast<long>(big.degree_at(steps));
  std::optional<std::size_t> first;
  for (std::size_t n = 0; n < seq.records.size() && !first; ++n)
    if (seq.records[n].degree > need) first = n;
  if (!first) fail(ErrorCode::window_too_short, "no level of degree above " + std::to_string(need) + " in the window");
  r.level = *first;
  r.value = value_at(seq.terms[r.level], r.level);
  for (std::size_t m = r.level + 1; m <= std::min(r.level + 2, seq.truncation()); ++m) {
    Rat again = value_at(seq.terms[m], m);
    if (again != r.value)
      fail(ErrorCode::stabilization_failure, "value " + r.value.str() + " at level " + std::to_string(r.level) +
                                                 " but " + again.str() + " at level " + std::to_string(m));
    r.rechecked.push_back(m);
  }
  return r;
}

inline Rat valuate(const ValuationHandle& h, const Poly<TowerElement>& f) { return valuate_detailed(h, f).value; }

namespace detail {

/// Residue of phi(t) for a value-zero phi.
inline ResidueElt residue_at(const RationalFunction& phi, const TowerElement& t) {
  ScaledValue a = evaluate_scaled(phi.num(), t);
  ScaledValue b = evaluate_scaled(phi.den(), t);
  const Rat va = scaled_valuation(a, false);
  const Rat vb = scaled_valuation(b, true);
  if (va != vb) fail(ErrorCode::nonzero_valuation, "value is " + (va - vb).str() + ", not 0");
  const Rat ya = va - Rat(a.content);
  const Rat yb = vb - Rat(b.content);
  const long e = t.field().e();
  // same fractional part, so one power of the uniformizer serves both
  const Rat frac = ya - Rat(ya.floor());
  const long j = frac.is_zero() ? 0 : (Rat(e) - frac * Rat(e)).num().get_si();
  TowerElement ua = unit_part(a.y, ya, j);
  TowerElement ub = unit_part(b.y, yb, j);
  return ua.residue() * ub.residue().inverse();
}

}  // namespace detail

struct ResidueResult {
  ResidueElt value;  // in the residue field of the level's tower
  std::size_t level = 0;
  std::vector<std::size_t> rechecked;
};

inline ResidueResult residue_of_detailed(const ValuationHandle& h, const RationalFunction& phi) {
  if (phi.num().is_zero()) fail(ErrorCode::nonzero_valuation, "zero has infinite value");
  ResidueResult r;
  if (!h.is_sequence()) {
    r.value = detail::residue_at(phi, h.point().x);
    return r;
  }
  const StackedSequence& seq = h.sequence();
  const Rat w = valuate(h, phi);
  if (!w.is_zero()) fail(ErrorCode::nonzero_valuation, "value is " + w.str() + ", not 0");
  r.level = detail::admissible_level(seq, phi);
  r.value = detail::residue_at(phi, seq.term_at_level(r.level));
  for (std::size_t m = r.level + 1; m <= std::min(r.level + 1, seq.truncation()); ++m) {
    ResidueElt again = detail::residue_at(phi, seq.term_at_level(m));
    const TowerField big = again.field();
    if (!big.has_prefix(r.value.field()))
      fail(ErrorCode::contract_violation, "residue fields are not nested");
    if (!(big.embed(r.value) == again))
      fail(ErrorCode::stabilization_failure, "residue changes between levels " + std::to_string(r.level) +
                                                 " and " + std::to_string(m));
    r.rechecked.push_back(m);
  }
  return r;
}

inline ResidueElt residue_of(const ValuationHandle& h, const RationalFunction& phi) {
  return residue_of_detailed(h, phi).value;
}

/// w(phi) >= 0. Points that are algebraic over Q do not carry the rank-one
/// valuation on Q(X), so membership of Q-coefficient inputs is refused.
inline bool member(const ValuationHandle& h, const RationalFunction& phi) {
  if (!h.is_sequence() && !h.point().transcendental_over_q &&
      h.coefficients() == ValuationHandle::Coefficients::rationals)
    fail(ErrorCode::unsupported, "membership refused: point declared algebraic over Q");
  if (phi.num().is_zero()) return true;
  return valuate(h, phi) >= Rat(0);
}

/// Value group chain (1/e_n)Z, or residue field chain F_{p^{f_n}}.
struct InvariantChain {
  std::vector<long> values;
  friend bool operator==(const InvariantChain&, const InvariantChain&) = default;
};

namespace detail {

inline InvariantChain chain_of(const ValuationHandle& h, bool ramification) {
  InvariantChain c;
  if (h.is_sequence()) {
    const StackedSequence& seq = h.sequence();
    if (!seq.spec) fail(ErrorCode::unsupported, "invariant chains need a declared spec");
    for (std::size_t n = 0; n <= seq.truncation(); ++n)
      c.values.push_back(ramification ? seq.spec->levels[n].e : seq.spec->levels[n].f);
    return c;
  }
  auto inv = subfield_invariants(h.point().x);
  if (!inv) fail(ErrorCode::unsupported, "invariants of the point are unknown");
  c.values.push_back(ramification ? inv->e : inv->f);
  return c;
}

}  // namespace detail

inline InvariantChain value_group_chain(const ValuationHandle& h) { return detail::chain_of(h, true); }
inline InvariantChain residue_field_chain(const ValuationHandle& h) { return detail::chain_of(h, false); }

struct CompositumReport {
  std::vector<bool> k1, k2, compositum;
  long e1 = 1, e2 = 1, e_l = 1;
  long e_l_over_k2() const { return e_l / e2; }
  bool holds() const { return e_l_over_k2() <= e1; }
  std::string str() const {
    return "e(L|K2) = " + std::to_string(e_l_over_k2()) + ", e(K1|Q_p) = " + std::to_string(e1) +
           (holds() ? ": holds" : ": fails");
  }
};

/// e(L|K2) <= e(K1|Q_p) for L = K1 K2, all three stored levels of t.
inline CompositumReport ramification_compositum_test(const TowerField& t, const std::vector<bool>& k1,
                                                     const std::vector<bool>& k2) {
  if (k1.size() != t.num_steps() || k2.size() != t.num_steps())
    fail(ErrorCode::invalid_argument, "level masks do not match the tower height");
  std::vector<bool> l(k1.size());
  for (std::size_t i = 0; i < l.size(); ++i) l[i] = k1[i] || k2[i];
  const std::vector<StoredLevel> levels = stored_levels(t);
  auto find = [&](const std::vector<bool>& mask) -> const StoredLevel& {
    for (const StoredLevel& s : levels)
      if (s.included == mask) return s;
    fail(ErrorCode::unsupported, "level is not stored");
  };
  CompositumReport r;
  r.k1 = k1;
  r.k2 = k2;
  r.compositum = l;
  r.e1 = find(k1).e();
  r.e2 = find(k2).e();
  r.e_l = find(l).e();
  return r;
}

}  // namespace padicval
