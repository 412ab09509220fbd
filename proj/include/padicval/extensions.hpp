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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "padicval/minpoly.hpp"
#include "padicval/tower.hpp"

namespace padicval {

namespace detail {

/// Every element of a residue tower, in coordinate order.
inline std::vector<TowerElement> all_elements(const TowerField& fq) {
  const std::size_t f = fq.degree();
  const unsigned long p = fq.p().get_ui();
  std::vector<TowerElement> out;
  std::vector<unsigned long> digits(f, 0);
  for (;;) {
    std::vector<Integer> c(digits.begin(), digits.end());
    out.push_back(fq.element(std::move(c)));
    std::size_t i = 0;
    while (i < f && ++digits[i] == p) digits[i++] = 0;
    if (i == f) break;
  }
  return out;
}

/// Root counting by successive residue approximation: normalize h, look at
/// its residue polynomial, count simple residue roots, and descend into
/// h(r + pi Y) for the multiple ones.
class RootCounter {
 public:
  explicit RootCounter(const TowerField& l)
      : l_(l), pi_(l.uniformizer()), residues_(all_elements(l.residue_field())) {
    TowerElement pe = l.one();
    for (long i = 0; i < l.e(); ++i) pe = pe * pi_;
    eps_inv_ = l.e() == 1 ? l.one() : pe.divide_by_p_power(1).inverse();
  }

  std::size_t count(const Poly<TowerElement>& h) const { return count(h, static_cast<long>(l_.precision())); }

 private:
  /// h / pi^k for k = e * (least coefficient valuation); returns the
  /// remaining coordinate precision.
  std::pair<Poly<TowerElement>, long> normalize(const Poly<TowerElement>& h, long prec) const {
    std::optional<Rat> vmin;
    for (const TowerElement& c : h.coeffs()) {
      ValuationBound b = c.valuation_bound();
      if (!b.exact || b.value >= Rat(prec)) continue;
      if (!vmin || b.value < *vmin) vmin = b.value;
    }
    if (!vmin)
      throw PrecisionError(ErrorCode::precision_insufficient, "root search ran out of precision",
                           2 * l_.precision());
    const Rat k = *vmin * Rat(l_.e());
    const long kk = k.num().get_si();
    if (kk == 0) return {h, prec};
    const long m = (kk + l_.e() - 1) / l_.e();
    const long j = m * l_.e() - kk;
    TowerElement mult = l_.one();
    for (long i = 0; i < j; ++i) mult = mult * pi_;
    TowerElement fix = eps_inv_.pow(Integer(m));
    std::vector<TowerElement> c;
    for (const TowerElement& a : h.coeffs()) {
      TowerElement z = a * mult;
      // coefficients beyond the known precision are dropped before dividing
      std::vector<Integer> coords = z.coords();
      const Integer cap = ipow(l_.p(), static_cast<unsigned long>(prec));
      for (Integer& x : coords) x = mod(x, cap);
      TowerElement zz = l_.element(std::move(coords));
      ValuationBound b = zz.valuation_bound();
      if (!b.exact || b.value >= Rat(m)) {
        c.push_back(zz.divide_by_p_power(static_cast<unsigned long>(m)) * fix);
      } else {
        c.push_back(l_.zero());
      }
    }
    return {Poly<TowerElement>(std::move(c)), prec - m};
  }

  std::size_t count(const Poly<TowerElement>& h0, long prec) const {
    if (prec < 1)
      throw PrecisionError(ErrorCode::precision_insufficient, "root search ran out of precision",
                           2 * l_.precision());
    auto [h, left] = normalize(h0, prec);
    if (left < 1)
      throw PrecisionError(ErrorCode::precision_insufficient, "root search ran out of precision",
                           2 * l_.precision());
    std::vector<TowerElement> rc;
    for (const TowerElement& a : h.coeffs()) rc.push_back(a.residue());
    Poly<TowerElement> hbar(std::move(rc));
    if (hbar.degree() <= 0) return 0;
    Poly<TowerElement> dbar = hbar.derivative();
    std::size_t total = 0;
    for (const TowerElement& r : residues_) {
      if (!hbar(r).is_zero()) continue;
      if (dbar.degree() >= 0 && !dbar(r).is_zero()) {
        ++total;
        continue;
      }
      const TowerElement lift = l_.lift_residue(r);
      Poly<TowerElement> shifted = h.taylor_shift(lift);
      std::vector<TowerElement> c;
      TowerElement scale = l_.one();
      for (const TowerElement& a : shifted.coeffs()) {
        c.push_back(a * scale);
        scale = scale * pi_;
      }
      total += count(Poly<TowerElement>(std::move(c)), left);
    }
    return total;
  }

  TowerField l_;
  TowerElement pi_;
  TowerElement eps_inv_;
  std::vector<TowerElement> residues_;
};

}  // namespace detail

/// Number of roots in L of a polynomial over Z (exact mod p^N), counted
/// without multiplicity; the polynomial must be separable.
inline std::size_t count_roots(const TowerField& l, const Poly<Integer>& g) {
  std::vector<TowerElement> c;
  for (const Integer& a : g.coeffs()) c.push_back(l.from_integer(a));
  return detail::RootCounter(l).count(Poly<TowerElement>(std::move(c)));
}

/// A generator of L over Q_p: the sum of the step generators, perturbed by
/// small multiples of p when that sum lies in a proper subfield.
inline TowerElement primitive_element(const TowerField& l) {
  TowerElement x = l.zero();
  for (std::size_t k = 1; k <= l.num_steps(); ++k) x = x + l.generator(k);
  for (long shift = 0; shift < 16; ++shift) {
    TowerElement y = x;
    for (std::size_t k = 1; k <= l.num_steps(); ++k)
      y = y + Integer(shift * static_cast<long>(k)) * l.generator(k) * l.generator(k);
    if (degree_over_qp(y) == l.degree()) return y;
  }
  fail(ErrorCode::primitive_search_exhausted, "no primitive element among the standard candidates");
}

/// L1 and L2 are Q_p-isomorphic: same degree and a generator of L2 has its
/// minimal polynomial split off a root in L1. Decided at working precision.
inline bool isomorphic(const TowerField& l1, const TowerField& l2) {
  if (l1.p() != l2.p()) return false;
  if (l1.degree() != l2.degree() || l1.e() != l2.e() || l1.f() != l2.f()) return false;
  if (l1.degree() == 1) return true;
  MinimalPolynomial m = minimal_polynomial(primitive_element(l2));
  return count_roots(l1.with_precision(m.precision), m.poly) > 0;
}

/// Number of Q_p-automorphisms of L.
inline std::size_t automorphism_count(const TowerField& l) {
  if (l.degree() == 1) return 1;
  MinimalPolynomial m = minimal_polynomial(primitive_element(l));
  return count_roots(l.with_precision(m.precision), m.poly);
}

namespace detail {

inline TowerField eisenstein_over_qp(const Integer& p, unsigned precision, const std::vector<long>& low) {
  TowerField q = TowerField::base(p, precision);
  std::vector<TowerElement> c;
  for (long a : low) c.push_back(q.from_integer(a));
  c.push_back(q.one());
  return make_eisenstein_step(q, Poly<TowerElement>(std::move(c)));
}

inline long least_nonresidue(long p) {
  for (long c = 2; c < p; ++c) {
    bool square = false;
    for (long x = 1; x < p; ++x) square = square || (x * x) % p == c;
    if (!square) return c;
  }
  fail(ErrorCode::unsupported, "no quadratic non-residue");
}

}  // namespace detail

/// One tower per isomorphism class of extensions of Q_p of degree 2 or 3,
/// p in {2, 3, 5}: the unramified one first, then Eisenstein representatives.
inline std::vector<TowerField> enumerate_small_extensions(const Integer& p, unsigned degree,
                                                          unsigned precision = 24) {
  require_prime(p);
  if ((p != 2 && p != 3 && p != 5) || (degree != 2 && degree != 3))
    fail(ErrorCode::unsupported, "extensions of degree " + std::to_string(degree) + " over Q_" + p.get_str());
  const long ps = p.get_si();
  const TowerField q = TowerField::base(p, precision);
  std::vector<TowerField> out{make_unramified_step(q, degree)};
  if (degree == 2) {
    if (ps == 2) {
      for (const auto& low : std::vector<std::vector<long>>{{-2, 2}, {2, 2}, {-2, 0}, {-6, 0}, {-10, 0}, {-14, 0}})
        out.push_back(detail::eisenstein_over_qp(p, precision, low));
    } else {
      const long c = detail::least_nonresidue(ps);
      out.push_back(detail::eisenstein_over_qp(p, precision, {-ps, 0}));
      out.push_back(detail::eisenstein_over_qp(p, precision, {-c * ps, 0}));
    }
    return out;
  }
  if (ps != 3) {
    out.push_back(detail::eisenstein_over_qp(p, precision, {-ps, 0, 0}));
    return out;
  }
  // wild cubics: Eisenstein polynomials with coefficients mod 27, grouped
  // by root existence
  std::vector<TowerField> reps;
  for (long c0 : {3, 6, 12, 15, 21, 24})
    for (long b : {0, 3, 6, 9, 12, 15, 18, 21, 24})
      for (long a : {0, 3, 6, 9, 12, 15, 18, 21, 24}) {
        TowerField l = detail::eisenstein_over_qp(p, precision, {c0, b, a});
        Poly<Integer> g({Integer(c0), Integer(b), Integer(a), Integer(1)});
        bool known = false;
        for (const TowerField& r : reps) {
          if (count_roots(r, g) > 0) {
            known = true;
            break;
          }
        }
        if (!known) reps.push_back(l);
      }
  for (TowerField& r : reps) out.push_back(r);
  return out;
}

}  // namespace padicval
