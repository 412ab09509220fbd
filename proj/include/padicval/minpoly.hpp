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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "padicval/linalg.hpp"
#include "padicval/polynomial.hpp"
#include "padicval/tower.hpp"

namespace padicval {

/// Minimal polynomial over Q_p of a tower element, with Z_p coefficients known
/// mod p^precision (stored in symmetric representation).
struct MinimalPolynomial {
  Poly<Integer> poly;
  unsigned precision = 0;
  std::size_t level = 0;  // prefix of the ambient tower it was computed in

  std::size_t degree() const { return static_cast<std::size_t>(poly.degree()); }
  std::string str() const { return to_string(to_rat_poly(poly)); }
};

namespace detail {

[[noreturn]] inline void insufficient(const TowerField& k, const std::string& what) {
  throw PrecisionError(ErrorCode::precision_insufficient,
                       what + " at precision " + std::to_string(k.precision()),
                       2 * k.precision());
}

inline Poly<Integer> symmetric_poly(const std::vector<Integer>& c, const Integer& m) {
  std::vector<Integer> s;
  for (const Integer& x : c) s.push_back(symmetric_mod(x, m));
  return Poly<Integer>(std::move(s));
}

inline bool congruent(const Poly<Integer>& a, const Poly<Integer>& b, const Integer& m) {
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    Integer x = i < a.size() ? a[i] : Integer(0);
    Integer y = i < b.size() ? b[i] : Integer(0);
    if (mod(x - y, m) != 0) return false;
  }
  return true;
}

}  // namespace detail

/// Characteristic polynomial of multiplication by x on its field, exact mod p^N.
inline Poly<Integer> characteristic_polynomial(const TowerElement& x) {
  const TowerField& k = x.field();
  return detail::symmetric_poly(charpoly_berkowitz(multiplication_matrix(x), k.modulus()),
                                k.modulus());
}

/// The characteristic polynomial chi of x on the smallest prefix containing it
/// equals m^(D/deg m). When chi'(x) is a unit mod p^N, x is a simple root and
/// m = chi exactly. Otherwise the lowest Q_p-linear relation among 1, x, x^2, ...
/// is found by echelon reduction; it is accepted only when at least half the
/// precision survives and m^(D/k) = chi still holds at the reduced precision.
inline MinimalPolynomial minimal_polynomial(const TowerElement& x) {
  const TowerField& ambient = x.field();
  const std::size_t level = ambient.level_of(x);
  const TowerElement y = ambient.restrict_to(x, level);
  const TowerField& k = y.field();
  const unsigned n = k.precision();
  const std::size_t d = k.degree();
  if (d == 1) {
    return MinimalPolynomial{
        Poly<Integer>({symmetric_mod(-y.coords()[0], k.modulus()), Integer(1)}), n, level};
  }
  const Poly<Integer> chi = characteristic_polynomial(y);
  if (!chi.derivative()(y).is_zero()) return MinimalPolynomial{chi, n, level};

  PadicEchelon ech(k.p(), n, d);
  ech.add(k.one().coords());
  TowerElement pw = y;
  for (std::size_t deg = 1; deg < d; ++deg, pw = pw * y) {
    auto red = ech.reduce(pw.coords());
    if (!red.residual_zero()) {
      ech.add(pw.coords());
      continue;
    }
    if (d % deg != 0) detail::insufficient(k, "inconsistent linear relation of degree " + std::to_string(deg));
    const unsigned long lost = ech.loss() + red.scale;
    if (lost >= n || n - lost < (n + 1) / 2)
      detail::insufficient(k, "minimal polynomial of degree " + std::to_string(deg) + " is ambiguous");
    const unsigned prec = static_cast<unsigned>(n - lost);
    const Integer mp = ipow(k.p(), prec);
    const Integer scale = ipow(k.p(), red.scale);
    const Integer wide = mp * scale;
    std::vector<Integer> c;
    for (std::size_t i = 0; i < deg; ++i) {
      Integer l = mod(red.lambda[i], wide);
      if (!mpz_divisible_p(l.get_mpz_t(), scale.get_mpz_t()))
        detail::insufficient(k, "non-integral minimal polynomial coefficient");
      Integer q;
      mpz_divexact(q.get_mpz_t(), l.get_mpz_t(), scale.get_mpz_t());
      c.push_back(q);
    }
    c.push_back(1);
    Poly<Integer> m = detail::symmetric_poly(c, mp);
    Poly<Integer> power = Poly<Integer>::constant(1);
    for (std::size_t i = 0; i < d / deg; ++i) power = power * m;
    ValuationBound dv = m.derivative()(y).valuation_bound();
    if (!detail::congruent(power, chi, mp) || !dv.exact || dv.value >= Rat(static_cast<long>(prec)))
      detail::insufficient(k, "could not certify a minimal polynomial of degree " + std::to_string(deg));
    return MinimalPolynomial{m, prec, level};
  }
  detail::insufficient(k, "element looks primitive but chi'(x) vanishes");
}

inline std::size_t degree_over_qp(const TowerElement& x) { return minimal_polynomial(x).degree(); }

struct FieldInvariants {
  long e = 1;
  long f = 1;
  friend bool operator==(const FieldInvariants&, const FieldInvariants&) = default;
};

/// (e, f) of Q_p(x) when x generates a stored level of its tower: a prefix,
/// or a subfield spanned by a subset of the step generators. nullopt otherwise.
inline std::optional<FieldInvariants> subfield_invariants(const TowerElement& x) {
  const std::size_t deg = degree_over_qp(x);
  const TowerField& t = x.field();
  const std::size_t lvl = t.level_of(x);
  for (std::size_t k = lvl; k <= t.num_steps(); ++k)
    if (t.degree_at(k) == deg) return FieldInvariants{t.e_at(k), t.f_at(k)};
  for (const StoredLevel& s : stored_levels(t))
    if (s.degree() == deg && s.contains(x)) return FieldInvariants{s.e(), s.f()};
  return std::nullopt;
}

}  // namespace padicval
