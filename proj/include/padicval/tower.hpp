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

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "padicval/errors.hpp"
#include "padicval/polynomial.hpp"
#include "padicval/rational.hpp"

namespace padicval {

/// One step of a tower: the adjoined root of a monic polynomial over the
/// previous field. Unramified steps have an irreducible residue polynomial;
/// Eisenstein steps are totally ramified.
struct TowerStep {
  enum class Kind { unramified, eisenstein };

  Kind kind = Kind::unramified;
  /// Non-leading coefficients g_0..g_{r-1}, each in coordinates of the base
  /// field. Kept exact (not reduced mod p^N) so a tower can change precision.
  std::vector<std::vector<Integer>> coeffs;

  std::size_t degree() const { return coeffs.size(); }

  friend bool operator==(const TowerStep& a, const TowerStep& b) {
    return a.kind == b.kind && a.coeffs == b.coeffs;
  }
};

inline const char* step_kind_name(TowerStep::Kind k) {
  return k == TowerStep::Kind::unramified ? "unramified" : "eisenstein";
}

/// Valuation of an element known mod p^N. When `exact` is false every
/// coordinate vanished and `value` is only the lower bound N.
struct ValuationBound {
  Rat value;
  bool exact = true;
};

class TowerField;
class TowerElement;

namespace detail {

struct TowerData;

struct StoredLevelData {
  std::vector<bool> included;                // per step
  std::vector<std::size_t> positions;        // flat indices of the sub-basis
  std::shared_ptr<const TowerData> field;    // the subfield as its own tower
};

struct TowerData {
  Integer p;
  unsigned precision = 0;
  Integer modulus;
  std::vector<TowerStep> steps;
  std::vector<std::size_t> dims{1};
  std::vector<long> e_at{1};
  std::vector<long> f_at{1};
  std::vector<std::vector<std::vector<Integer>>> reduced;
  std::vector<std::size_t> residue_positions{0};
  std::shared_ptr<const TowerData> parent;
  std::shared_ptr<const TowerData> residue;  // null: the field is its own residue field

  mutable std::once_flag levels_once;
  mutable std::vector<StoredLevelData> levels;

  std::size_t num_steps() const { return steps.size(); }
  std::size_t dim() const { return dims.back(); }
};

inline bool block_is_zero(const Integer* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (sgn(a[i]) != 0) return false;
  return true;
}

inline void mod_block(Integer* a, std::size_t n, const Integer& m) {
  for (std::size_t i = 0; i < n; ++i) mpz_mod(a[i].get_mpz_t(), a[i].get_mpz_t(), m.get_mpz_t());
}

/// out = a * b in the field given by the first k steps. Inputs are reduced;
/// the output is reduced.
inline void mul_rec(const TowerData& d, std::size_t k, const Integer* a, const Integer* b,
                    Integer* out) {
  if (k == 0) {
    mpz_mul(out[0].get_mpz_t(), a[0].get_mpz_t(), b[0].get_mpz_t());
    mpz_mod(out[0].get_mpz_t(), out[0].get_mpz_t(), d.modulus.get_mpz_t());
    return;
  }
  const std::size_t r = d.steps[k - 1].degree();
  const std::size_t m = d.dims[k - 1];
  std::vector<Integer> acc((2 * r - 1) * m);
  std::vector<Integer> tmp(m);
  std::vector<bool> a_nz(r), b_nz(r);
  for (std::size_t i = 0; i < r; ++i) {
    a_nz[i] = !block_is_zero(a + i * m, m);
    b_nz[i] = !block_is_zero(b + i * m, m);
  }
  for (std::size_t i = 0; i < r; ++i) {
    if (!a_nz[i]) continue;
    for (std::size_t j = 0; j < r; ++j) {
      if (!b_nz[j]) continue;
      mul_rec(d, k - 1, a + i * m, b + j * m, tmp.data());
      Integer* dst = acc.data() + (i + j) * m;
      for (std::size_t t = 0; t < m; ++t) dst[t] += tmp[t];
    }
  }
  const auto& g = d.reduced[k - 1];
  for (std::size_t t = 2 * r - 1; t-- > r;) {
    Integer* hi = acc.data() + t * m;
    mod_block(hi, m, d.modulus);
    if (block_is_zero(hi, m)) continue;
    for (std::size_t i = 0; i < r; ++i) {
      if (block_is_zero(g[i].data(), m)) continue;
      mul_rec(d, k - 1, hi, g[i].data(), tmp.data());
      Integer* dst = acc.data() + (t - r + i) * m;
      for (std::size_t s = 0; s < m; ++s) dst[s] -= tmp[s];
    }
  }
  for (std::size_t i = 0; i < r * m; ++i) {
    mpz_mod(acc[i].get_mpz_t(), acc[i].get_mpz_t(), d.modulus.get_mpz_t());
    out[i] = std::move(acc[i]);
  }
}

/// Valuation of the element of the first k steps stored at a; nullopt when
/// every coordinate is zero.
inline std::optional<Rat> valuation_rec(const TowerData& d, std::size_t k, const Integer* a) {
  if (k == 0) {
    if (sgn(a[0]) == 0) return std::nullopt;
    return Rat(static_cast<long>(vp_integer(a[0], d.p)));
  }
  const TowerStep& step = d.steps[k - 1];
  const std::size_t m = d.dims[k - 1];
  std::optional<Rat> best;
  for (std::size_t j = 0; j < step.degree(); ++j) {
    auto v = valuation_rec(d, k - 1, a + j * m);
    if (!v) continue;
    // Summands a_j pi^j have pairwise distinct values over a ramified step, and
    // residually independent ones over an unramified step.
    Rat term = step.kind == TowerStep::Kind::eisenstein ? *v + Rat(Integer(static_cast<long>(j)), Integer(d.e_at[k]))
                                                        : *v;
    if (!best || term < *best) best = term;
  }
  return best;
}

inline std::vector<Integer> reduce_vector(const std::vector<Integer>& v, const Integer& m) {
  std::vector<Integer> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = mod(v[i], m);
  return r;
}

}  // namespace detail

/// A finite extension of Q_p presented as a tower of unramified and Eisenstein
/// steps, together with the absolute precision N of its elements. Elements are
/// integral and live in O_K / p^N O_K; the coordinates are with respect to the
/// nested power basis of the step generators, which is a Z_p-basis of O_K.
class TowerField {
 public:
  TowerField() = default;

  static TowerField base(const Integer& p, unsigned precision) {
    require_prime(p);
    if (precision == 0) fail(ErrorCode::invalid_argument, "precision must be positive");
    auto d = std::make_shared<detail::TowerData>();
    d->p = p;
    d->precision = precision;
    d->modulus = ipow(p, precision);
    if (precision != 1) d->residue = base(p, 1).d_;
    return TowerField(std::move(d));
  }

  const Integer& p() const { return d_->p; }
  unsigned precision() const { return d_->precision; }
  const Integer& modulus() const { return d_->modulus; }
  std::size_t num_steps() const { return d_->num_steps(); }
  const TowerStep& step(std::size_t i) const { return d_->steps.at(i); }
  const std::vector<TowerStep>& steps() const { return d_->steps; }

  std::size_t degree() const { return d_->dim(); }
  long e() const { return d_->e_at.back(); }
  long f() const { return d_->f_at.back(); }
  std::size_t degree_at(std::size_t k) const { return d_->dims.at(k); }
  long e_at(std::size_t k) const { return d_->e_at.at(k); }
  long f_at(std::size_t k) const { return d_->f_at.at(k); }

  /// The field made of the first k steps.
  TowerField prefix(std::size_t k) const {
    if (k > num_steps()) fail(ErrorCode::invalid_argument, "prefix beyond tower height");
    auto d = d_;
    while (d->num_steps() > k) d = d->parent;
    return TowerField(d);
  }

  TowerField with_precision(unsigned precision) const {
    TowerField t = base(p(), precision);
    for (const TowerStep& s : steps()) t = t.extended(s);
    return t;
  }

  /// F_{p^f} as a precision-one tower of the unramified steps.
  TowerField residue_field() const { return d_->residue ? TowerField(d_->residue) : *this; }

  bool is_residue_field() const { return d_->residue == nullptr; }

  const std::vector<std::size_t>& residue_positions() const { return d_->residue_positions; }

  bool same_as(const TowerField& o) const {
    if (d_ == o.d_) return true;
    return p() == o.p() && precision() == o.precision() && steps() == o.steps();
  }
  friend bool operator==(const TowerField& a, const TowerField& b) { return a.same_as(b); }

  /// True when `other` is (structurally) one of this tower's prefixes.
  bool has_prefix(const TowerField& other) const {
    if (other.num_steps() > num_steps()) return false;
    return prefix(other.num_steps()).same_as(other);
  }

  TowerElement zero() const;
  TowerElement one() const;
  TowerElement from_integer(const Integer& n) const;
  /// A p-integral rational mapped into O_K / p^N.
  TowerElement from_rational(const Rat& q) const;
  TowerElement element(std::vector<Integer> coords) const;
  /// Root adjoined by step k (1-based).
  TowerElement generator(std::size_t k) const;
  /// The last Eisenstein generator, or p when the tower is unramified.
  TowerElement uniformizer() const;
  /// The last unramified generator, or 1 when the residue field is F_p.
  TowerElement unramified_generator() const;
  /// Image of x from a prefix of this tower.
  TowerElement embed(const TowerElement& x) const;
  /// Smallest k such that x lies in prefix(k).
  std::size_t level_of(const TowerElement& x) const;
  /// x viewed in prefix(k); x must lie there.
  TowerElement restrict_to(const TowerElement& x, std::size_t k) const;
  /// Teichmuller-free lift of a residue: the same coordinates on the
  /// unramified basis, zero elsewhere.
  TowerElement lift_residue(const TowerElement& r) const;

  /// The tower extended by `step` without validation. Use
  /// make_unramified_step / make_eisenstein_step for checked construction.
  TowerField extended(const TowerStep& step) const {
    const std::size_t m = degree();
    for (const auto& c : step.coeffs)
      if (c.size() != m) fail(ErrorCode::contract_violation, "step coefficient has wrong shape");
    if (step.degree() < 2) fail(ErrorCode::contract_violation, "step degree must be at least 2");
    auto d = std::make_shared<detail::TowerData>();
    d->p = p();
    d->precision = precision();
    d->modulus = modulus();
    d->steps = steps();
    d->steps.push_back(step);
    d->dims = d_->dims;
    d->dims.push_back(m * step.degree());
    d->e_at = d_->e_at;
    d->f_at = d_->f_at;
    const long r = static_cast<long>(step.degree());
    const bool unram = step.kind == TowerStep::Kind::unramified;
    d->e_at.push_back(e() * (unram ? 1 : r));
    d->f_at.push_back(f() * (unram ? r : 1));
    d->reduced = d_->reduced;
    std::vector<std::vector<Integer>> red;
    for (const auto& c : step.coeffs) red.push_back(detail::reduce_vector(c, modulus()));
    d->reduced.push_back(std::move(red));
    d->residue_positions.clear();
    if (unram) {
      for (std::size_t j = 0; j < step.degree(); ++j)
        for (std::size_t pos : d_->residue_positions) d->residue_positions.push_back(j * m + pos);
    } else {
      d->residue_positions = d_->residue_positions;
    }
    d->parent = d_;
    if (!(precision() == 1 && is_residue_field() && unram)) {
      TowerField res = residue_field();
      if (unram) {
        TowerStep rs;
        rs.kind = TowerStep::Kind::unramified;
        for (const auto& c : step.coeffs) {
          std::vector<Integer> rc;
          for (std::size_t pos : d_->residue_positions) rc.push_back(mod(c[pos], p()));
          rs.coeffs.push_back(std::move(rc));
        }
        res = res.extended(rs);
      }
      d->residue = res.d_;
    }
    return TowerField(std::move(d));
  }

  const std::shared_ptr<const detail::TowerData>& data() const { return d_; }
  explicit TowerField(std::shared_ptr<const detail::TowerData> d) : d_(std::move(d)) {}

  std::string describe() const {
    std::string s = "Q_" + p().get_str();
    for (const TowerStep& st : steps())
      s += st.kind == TowerStep::Kind::unramified ? " -U" : " -E";
    if (!steps().empty()) {
      s += " (e=" + std::to_string(e()) + ", f=" + std::to_string(f()) +
           ", d=" + std::to_string(degree()) + ")";
    }
    return s;
  }

 private:
  std::shared_ptr<const detail::TowerData> d_;
};

/// An element of O_K / p^N O_K for a tower K.
class TowerElement {
 public:
  TowerElement() = default;
  TowerElement(TowerField field, std::vector<Integer> coords)
      : field_(std::move(field)), c_(std::move(coords)) {
    if (c_.size() != field_.degree())
      fail(ErrorCode::contract_violation, "coordinate vector does not match tower degree");
    for (auto& x : c_) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), field_.modulus().get_mpz_t());
  }

  const TowerField& field() const { return field_; }
  const std::vector<Integer>& coords() const { return c_; }

  bool is_zero() const { return detail::block_is_zero(c_.data(), c_.size()); }

  ValuationBound valuation_bound() const {
    auto v = detail::valuation_rec(*field_.data(), field_.num_steps(), c_.data());
    if (!v) return ValuationBound{Rat(static_cast<long>(field_.precision())), false};
    return ValuationBound{*v, true};
  }

  /// Exact valuation. An element that vanishes mod p^N cannot be told apart
  /// from zero and raises a below-precision error.
  ExtVal valuation() const {
    auto b = valuation_bound();
    if (!b.exact)
      throw PrecisionError(ErrorCode::below_precision,
                           "element vanishes at precision " + std::to_string(field_.precision()),
                           2 * field_.precision());
    return ExtVal(b.value);
  }

  /// Image in the residue field F_{p^f}. Elements are integral, so this is
  /// always defined; it is zero exactly when the valuation is positive.
  TowerElement residue() const {
    if (field_.is_residue_field()) return *this;
    TowerField rf = field_.residue_field();
    std::vector<Integer> rc;
    rc.reserve(rf.degree());
    for (std::size_t pos : field_.residue_positions()) rc.push_back(mod(c_[pos], field_.p()));
    return TowerElement(rf, std::move(rc));
  }

  TowerElement pow(Integer exp) const {
    if (exp < 0) fail(ErrorCode::domain_error, "negative exponent");
    TowerElement result = field_.one();
    TowerElement base = *this;
    while (exp > 0) {
      if (mpz_odd_p(exp.get_mpz_t())) result = result * base;
      exp >>= 1;
      if (exp > 0) base = base * base;
    }
    return result;
  }

  /// Inverse of a unit (valuation zero).
  TowerElement inverse() const {
    if (*this == field_.one()) return *this;
    if (field_.is_residue_field()) {
      if (is_zero()) fail(ErrorCode::domain_error, "inverse of zero in residue field");
      Integer q = ipow(field_.p(), static_cast<unsigned long>(field_.degree()));
      return pow(q - 2);
    }
    TowerElement r = residue();
    if (r.is_zero()) fail(ErrorCode::domain_error, "inverse of a non-unit");
    TowerElement y = field_.lift_residue(r.inverse());
    const TowerElement two = field_.from_integer(2);
    // Each Newton step squares the error ideal; e*N steps of the maximal ideal
    // cover p^N.
    unsigned long needed = static_cast<unsigned long>(field_.e()) * field_.precision();
    for (unsigned long reach = 1; reach < 2 * needed; reach *= 2) y = y * (two - *this * y);
    return y;
  }

  /// Exact division by p^r; every coordinate must be divisible by p^r. The
  /// quotient is known mod p^(N-r), its higher digits are zero.
  TowerElement divide_by_p_power(unsigned long r) const {
    Integer pr = ipow(field_.p(), r);
    std::vector<Integer> q(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (!mpz_divisible_p(c_[i].get_mpz_t(), pr.get_mpz_t()))
        fail(ErrorCode::domain_error, "element is not divisible by p^" + std::to_string(r));
      mpz_divexact(q[i].get_mpz_t(), c_[i].get_mpz_t(), pr.get_mpz_t());
    }
    return TowerElement(field_, std::move(q));
  }

  friend TowerElement operator+(const TowerElement& a, const TowerElement& b) {
    check_same(a, b);
    std::vector<Integer> r(a.c_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.c_[i] + b.c_[i];
    return TowerElement(a.field_, std::move(r));
  }
  friend TowerElement operator-(const TowerElement& a, const TowerElement& b) {
    check_same(a, b);
    std::vector<Integer> r(a.c_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.c_[i] - b.c_[i];
    return TowerElement(a.field_, std::move(r));
  }
  friend TowerElement operator-(const TowerElement& a) { return a.field_.zero() - a; }
  friend TowerElement operator*(const TowerElement& a, const TowerElement& b) {
    check_same(a, b);
    std::vector<Integer> r(a.c_.size());
    detail::mul_rec(*a.field_.data(), a.field_.num_steps(), a.c_.data(), b.c_.data(), r.data());
    TowerElement out;
    out.field_ = a.field_;
    out.c_ = std::move(r);
    return out;
  }
  friend TowerElement operator*(const Integer& s, const TowerElement& a) {
    std::vector<Integer> r(a.c_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = s * a.c_[i];
    return TowerElement(a.field_, std::move(r));
  }

  friend bool operator==(const TowerElement& a, const TowerElement& b) {
    return a.field_.same_as(b.field_) && a.c_ == b.c_;
  }

  /// Coordinates in symmetric representation, e.g. "[1, 0, -2]".
  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) s += ", ";
      s += symmetric_mod(c_[i], field_.modulus()).get_str();
    }
    return s + "]";
  }

 private:
  static void check_same(const TowerElement& a, const TowerElement& b) {
    if (!a.field_.same_as(b.field_))
      fail(ErrorCode::contract_violation, "elements belong to different towers");
  }

  TowerField field_;
  std::vector<Integer> c_;
};

inline TowerElement TowerField::zero() const {
  return TowerElement(*this, std::vector<Integer>(degree()));
}

inline TowerElement TowerField::from_integer(const Integer& n) const {
  std::vector<Integer> c(degree());
  c[0] = n;
  return TowerElement(*this, std::move(c));
}

inline TowerElement TowerField::one() const { return from_integer(1); }

inline TowerElement TowerField::from_rational(const Rat& q) const {
  return from_integer(reduce_p_integral(q, modulus()));
}

inline TowerElement TowerField::element(std::vector<Integer> coords) const {
  return TowerElement(*this, std::move(coords));
}

inline TowerElement TowerField::generator(std::size_t k) const {
  if (k == 0 || k > num_steps()) fail(ErrorCode::invalid_argument, "no such tower step");
  std::vector<Integer> c(degree());
  c[d_->dims[k - 1]] = 1;
  return TowerElement(*this, std::move(c));
}

inline TowerElement TowerField::uniformizer() const {
  for (std::size_t k = num_steps(); k > 0; --k)
    if (step(k - 1).kind == TowerStep::Kind::eisenstein) return generator(k);
  return from_integer(p());
}

inline TowerElement TowerField::unramified_generator() const {
  for (std::size_t k = num_steps(); k > 0; --k)
    if (step(k - 1).kind == TowerStep::Kind::unramified) return generator(k);
  return one();
}

inline TowerElement TowerField::embed(const TowerElement& x) const {
  if (!has_prefix(x.field()))
    fail(ErrorCode::contract_violation, "element does not come from a prefix of this tower");
  std::vector<Integer> c(degree());
  for (std::size_t i = 0; i < x.coords().size(); ++i) c[i] = x.coords()[i];
  return TowerElement(*this, std::move(c));
}

inline std::size_t TowerField::level_of(const TowerElement& x) const {
  const auto& c = x.coords();
  std::size_t last = 0;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (sgn(c[i]) != 0) last = i;
  std::size_t k = 0;
  while (d_->dims[k] <= last) ++k;
  return k;
}

inline TowerElement TowerField::restrict_to(const TowerElement& x, std::size_t k) const {
  if (level_of(x) > k) fail(ErrorCode::contract_violation, "element does not lie in the prefix");
  TowerField sub = prefix(k);
  std::vector<Integer> c(x.coords().begin(), x.coords().begin() + static_cast<long>(sub.degree()));
  return TowerElement(sub, std::move(c));
}

inline TowerElement TowerField::lift_residue(const TowerElement& r) const {
  if (!r.field().same_as(residue_field()))
    fail(ErrorCode::contract_violation, "residue from a different field");
  std::vector<Integer> c(degree());
  const auto& pos = residue_positions();
  for (std::size_t i = 0; i < pos.size(); ++i) c[pos[i]] = r.coords()[i];
  return TowerElement(*this, std::move(c));
}

template <>
struct ScalarTraits<TowerElement> {
  static bool is_zero(const TowerElement& x) { return x.is_zero(); }
  static TowerElement zero_like(const TowerElement& x) { return x.field().zero(); }
  static TowerElement one_like(const TowerElement& x) { return x.field().one(); }
  static TowerElement inverse(const TowerElement& x) { return x.inverse(); }
  static TowerElement from_integer(const TowerElement& x, const Integer& n) {
    return x.field().from_integer(n);
  }
  static TowerElement lift(const TowerElement& like, const Integer& n) {
    return like.field().from_integer(n);
  }
  static TowerElement lift(const TowerElement& like, const Rat& q) {
    return like.field().from_rational(q);
  }
};

using ResidueElt = TowerElement;

namespace detail {

inline std::vector<unsigned long> prime_divisors(unsigned long n) {
  std::vector<unsigned long> out;
  for (unsigned long q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    out.push_back(q);
    while (n % q == 0) n /= q;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace detail

/// Rabin's test over the finite field `fq` (a residue tower).
inline bool is_irreducible_over(const TowerField& fq, const Poly<TowerElement>& h) {
  const int r = h.degree();
  if (r <= 0) return false;
  if (r == 1) return true;
  const Integer q = ipow(fq.p(), static_cast<unsigned long>(fq.degree()));
  using P = Poly<TowerElement>;
  const P x = P::monomial(fq.one(), 1);
  std::vector<P> frob{x % h};
  for (int i = 1; i <= r; ++i) frob.push_back(powmod(frob.back(), q, h));
  if (!(frob[static_cast<std::size_t>(r)] == frob[0])) return false;
  for (unsigned long l : detail::prime_divisors(static_cast<unsigned long>(r))) {
    P g = gcd(frob[static_cast<std::size_t>(r) / l] - x, h);
    if (g.degree() > 0) return false;
  }
  return true;
}

/// Residue polynomial of a step's defining polynomial over the base residue
/// field.
inline Poly<TowerElement> residue_polynomial(const TowerField& base,
                                             const std::vector<std::vector<Integer>>& coeffs) {
  std::vector<TowerElement> c;
  for (const auto& v : coeffs) c.push_back(base.element(v).residue());
  c.push_back(base.residue_field().one());
  return Poly<TowerElement>(std::move(c));
}

/// Extends `base` by an unramified step of degree fstep. Without explicit
/// coefficients, the first irreducible residue polynomial in a fixed
/// enumeration order is lifted; the choice is recorded in the step.
inline TowerField make_unramified_step(
    const TowerField& base, std::size_t fstep,
    std::optional<std::vector<std::vector<Integer>>> coeffs = std::nullopt) {
  if (fstep < 2) fail(ErrorCode::invalid_argument, "unramified step degree must be at least 2");
  TowerStep step;
  step.kind = TowerStep::Kind::unramified;
  if (coeffs) {
    if (coeffs->size() != fstep)
      fail(ErrorCode::contract_violation, "defining polynomial degree differs from step degree");
    for (const auto& c : *coeffs)
      if (c.size() != base.degree())
        fail(ErrorCode::contract_violation, "coefficient shape does not match base tower");
    if (!is_irreducible_over(base.residue_field(), residue_polynomial(base, *coeffs)))
      fail(ErrorCode::contract_violation, "residue of defining polynomial is reducible");
    step.coeffs = *coeffs;
    return base.extended(step);
  }
  const TowerField fq = base.residue_field();
  const std::size_t f = fq.degree();
  const std::size_t slots = fstep * f;
  const unsigned long p = base.p().get_ui();
  for (unsigned long index = 1; index < 10'000'000; ++index) {
    std::vector<unsigned long> digits(slots);
    unsigned long n = index;
    for (std::size_t s = 0; s < slots && n; ++s, n /= p) digits[s] = n % p;
    if (n) break;
    bool const_zero = true;
    for (std::size_t s = 0; s < f; ++s) const_zero = const_zero && digits[s] == 0;
    if (const_zero) continue;
    std::vector<std::vector<Integer>> cand;
    for (std::size_t i = 0; i < fstep; ++i) {
      std::vector<Integer> res(f);
      for (std::size_t s = 0; s < f; ++s) res[s] = digits[i * f + s];
      cand.push_back(base.lift_residue(fq.element(std::move(res))).coords());
    }
    if (is_irreducible_over(fq, residue_polynomial(base, cand))) {
      step.coeffs = std::move(cand);
      return base.extended(step);
    }
  }
  fail(ErrorCode::unsupported, "no irreducible residue polynomial found");
}

/// Extends `base` by the root of an Eisenstein polynomial g (monic; non-leading
/// coefficients of positive valuation; constant term a uniformizer of base).
inline TowerField make_eisenstein_step(const TowerField& base, const Poly<TowerElement>& g) {
  const int r = g.degree();
  if (r < 2) fail(ErrorCode::contract_violation, "Eisenstein polynomial must have degree >= 2");
  if (!(g.leading() == base.one()))
    fail(ErrorCode::contract_violation, "Eisenstein polynomial must be monic");
  const Rat unif(Integer(1), Integer(base.e()));
  TowerStep step;
  step.kind = TowerStep::Kind::eisenstein;
  for (int i = 0; i < r; ++i) {
    const TowerElement& c = g[static_cast<std::size_t>(i)];
    if (!c.field().same_as(base))
      fail(ErrorCode::contract_violation, "coefficient outside the base tower");
    ValuationBound v = c.valuation_bound();
    if (i == 0 && (!v.exact || v.value != unif))
      fail(ErrorCode::contract_violation,
           "not Eisenstein: constant term has valuation " + (v.exact ? v.value.str() : std::string("inf")) +
               ", expected " + unif.str());
    if (i > 0 && v.exact && v.value <= Rat(0))
      fail(ErrorCode::contract_violation, "not Eisenstein: coefficient " + std::to_string(i) +
                                              " has valuation " + v.value.str());
    std::vector<Integer> exact;
    for (const Integer& x : c.coords()) exact.push_back(symmetric_mod(x, base.modulus()));
    step.coeffs.push_back(std::move(exact));
  }
  return base.extended(step);
}

/// X^r - (uniformizer of base).
inline TowerField make_default_eisenstein_step(const TowerField& base, std::size_t r) {
  std::vector<TowerElement> c(r + 1, base.zero());
  c[0] = -base.uniformizer();
  c[r] = base.one();
  return make_eisenstein_step(base, Poly<TowerElement>(std::move(c)));
}

/// Rebuilds a tower from serialized steps, validating each.
inline TowerField tower_from_steps(const Integer& p, unsigned precision,
                                   const std::vector<TowerStep>& steps) {
  TowerField t = TowerField::base(p, precision);
  for (const TowerStep& s : steps) {
    if (s.kind == TowerStep::Kind::unramified) {
      t = make_unramified_step(t, s.degree(), s.coeffs);
    } else {
      std::vector<TowerElement> c;
      for (const auto& v : s.coeffs) c.push_back(t.element(v));
      c.push_back(t.one());
      TowerField next = make_eisenstein_step(t, Poly<TowerElement>(std::move(c)));
      // keep the caller's exact integers
      t = t.extended(s);
      (void)next;
    }
  }
  return t;
}

/// A subfield generated by a subset of the step generators whose defining
/// polynomials only involve earlier members of the subset.
struct StoredLevel {
  std::vector<bool> included;
  TowerField field;
  std::vector<std::size_t> positions;

  long e() const { return field.e(); }
  long f() const { return field.f(); }
  std::size_t degree() const { return field.degree(); }

  bool contains(const TowerElement& x) const {
    std::vector<bool> allowed(x.coords().size(), false);
    for (std::size_t pos : positions) allowed[pos] = true;
    for (std::size_t i = 0; i < x.coords().size(); ++i)
      if (!allowed[i] && sgn(x.coords()[i]) != 0) return false;
    return true;
  }

  TowerElement restrict(const TowerElement& x) const {
    std::vector<Integer> c;
    for (std::size_t pos : positions) c.push_back(x.coords()[pos]);
    return field.element(std::move(c));
  }

  TowerElement embed_into(const TowerField& full, const TowerElement& y) const {
    std::vector<Integer> c(full.degree());
    for (std::size_t i = 0; i < positions.size(); ++i) c[positions[i]] = y.coords()[i];
    return full.element(std::move(c));
  }
};

namespace detail {

inline std::vector<StoredLevelData> compute_stored_levels(const TowerField& t) {
  const std::size_t k = t.num_steps();
  std::vector<StoredLevelData> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::vector<bool> inc(k);
    for (std::size_t s = 0; s < k; ++s) inc[s] = (mask >> s) & 1U;
    // flat index i is allowed when every excluded step has digit zero
    auto allowed = [&](std::size_t idx, std::size_t upto) {
      for (std::size_t s = 0; s < upto; ++s) {
        std::size_t digit = (idx / t.degree_at(s)) % t.step(s).degree();
        if (!inc[s] && digit != 0) return false;
      }
      return true;
    };
    bool ok = true;
    TowerField sub = TowerField::base(t.p(), t.precision());
    for (std::size_t s = 0; s < k && ok; ++s) {
      if (!inc[s]) continue;
      std::vector<std::vector<Integer>> proj;
      for (const auto& c : t.step(s).coeffs) {
        std::vector<Integer> pc;
        for (std::size_t idx = 0; idx < c.size(); ++idx) {
          if (allowed(idx, s)) {
            pc.push_back(c[idx]);
          } else if (sgn(c[idx]) != 0) {
            ok = false;
          }
        }
        proj.push_back(std::move(pc));
      }
      if (!ok) break;
      try {
        TowerStep st{t.step(s).kind, proj};
        if (st.kind == TowerStep::Kind::unramified) {
          sub = make_unramified_step(sub, st.degree(), proj);
        } else {
          std::vector<TowerElement> c;
          for (const auto& v : proj) c.push_back(sub.element(v));
          c.push_back(sub.one());
          make_eisenstein_step(sub, Poly<TowerElement>(std::move(c)));
          sub = sub.extended(st);
        }
      } catch (const Error&) {
        ok = false;
      }
    }
    if (!ok) continue;
    StoredLevelData lvl;
    lvl.included = inc;
    for (std::size_t idx = 0; idx < t.degree(); ++idx)
      if (allowed(idx, k)) lvl.positions.push_back(idx);
    lvl.field = sub.data();
    out.push_back(std::move(lvl));
  }
  return out;
}

}  // namespace detail

/// Every valid subset-of-steps subfield of t, including Q_p, each prefix and
/// t itself. Computed once per tower.
inline std::vector<StoredLevel> stored_levels(const TowerField& t) {
  const auto& d = *t.data();
  std::call_once(d.levels_once, [&] { d.levels = detail::compute_stored_levels(t); });
  std::vector<StoredLevel> out;
  for (const auto& l : d.levels) out.push_back(StoredLevel{l.included, TowerField(l.field), l.positions});
  return out;
}

}  // namespace padicval
