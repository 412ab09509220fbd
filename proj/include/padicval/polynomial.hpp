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
#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "padicval/errors.hpp"
#include "padicval/rational.hpp"

namespace padicval {

/// Ring-element hooks a coefficient type provides to Poly. Specialized for
/// every scalar used with Poly.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rat> {
  static bool is_zero(const Rat& x) { return x.is_zero(); }
  static Rat zero_like(const Rat&) { return Rat(0); }
  static Rat one_like(const Rat&) { return Rat(1); }
  static Rat inverse(const Rat& x) { return Rat(1) / x; }
  static Rat from_integer(const Rat&, const Integer& n) { return Rat(n); }
};

template <>
struct ScalarTraits<Integer> {
  static bool is_zero(const Integer& x) { return x == 0; }
  static Integer zero_like(const Integer&) { return 0; }
  static Integer one_like(const Integer&) { return 1; }
  static Integer from_integer(const Integer&, const Integer& n) { return n; }
};

/// Dense univariate polynomial, constant term first. The zero polynomial has
/// no coefficients and degree -1.
template <class S>
class Poly {
  using T = ScalarTraits<S>;

 public:
  Poly() = default;
  explicit Poly(std::vector<S> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly constant(const S& c) { return Poly(std::vector<S>{c}); }

  /// c * X^k
  static Poly monomial(const S& c, std::size_t k) {
    std::vector<S> v(k + 1, T::zero_like(c));
    v[k] = c;
    return Poly(std::move(v));
  }

  /// X - a
  static Poly linear_root(const S& a) {
    return Poly(std::vector<S>{T::zero_like(a) - a, T::one_like(a)});
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::size_t size() const { return c_.size(); }
  const std::vector<S>& coeffs() const { return c_; }
  const S& operator[](std::size_t i) const { return c_[i]; }
  const S& leading() const { return c_.back(); }

  /// Coefficient i, or a zero shaped like `like` when i is past the degree.
  S coeff_or_zero(std::size_t i, const S& like) const {
    return i < c_.size() ? c_[i] : T::zero_like(like);
  }

  /// Horner evaluation.
  template <class X>
  X operator()(const X& x) const {
    X acc = zero_of(x);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + lift(*it, x);
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<S> d;
    d.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
      d.push_back(c_[i] * T::from_integer(c_[i], Integer(static_cast<unsigned long>(i))));
    return Poly(std::move(d));
  }

  /// Coefficients of f(a + Y) as a polynomial in Y, by repeated synthetic
  /// division.
  template <class X>
  Poly<X> taylor_shift(const X& a) const {
    std::vector<X> work;
    work.reserve(c_.size());
    for (const S& c : c_) work.push_back(lift(c, a));
    const std::size_t n = work.size();
    for (std::size_t k = 0; k + 1 < n; ++k)
      for (std::size_t i = n - 1; i-- > k;) work[i] = work[i] + a * work[i + 1];
    return Poly<X>(std::move(work));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const Poly& big = a.size() >= b.size() ? a : b;
    const Poly& small = a.size() >= b.size() ? b : a;
    std::vector<S> r = big.c_;
    for (std::size_t i = 0; i < small.size(); ++i) r[i] = r[i] + small.c_[i];
    return Poly(std::move(r));
  }

  friend Poly operator-(const Poly& a) {
    std::vector<S> r;
    r.reserve(a.size());
    for (const S& c : a.c_) r.push_back(T::zero_like(c) - c);
    return Poly(std::move(r));
  }

  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<S> r(a.size() + b.size() - 1, T::zero_like(a.c_[0]));
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (T::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
  }

  friend Poly operator*(const S& s, const Poly& a) {
    std::vector<S> r;
    r.reserve(a.size());
    for (const S& c : a.c_) r.push_back(s * c);
    return Poly(std::move(r));
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Euclidean division. The leading coefficient of the divisor must be
  /// invertible in S.
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) fail(ErrorCode::domain_error, "polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly(), a};
    const S inv = T::inverse(b.leading());
    std::vector<S> rem = a.c_;
    std::vector<S> quo(a.size() - b.size() + 1, T::zero_like(b.leading()));
    for (std::size_t k = quo.size(); k-- > 0;) {
      const S q = rem[k + b.size() - 1] * inv;
      quo[k] = q;
      if (T::is_zero(q)) continue;
      for (std::size_t j = 0; j < b.size(); ++j) rem[k + j] = rem[k + j] - q * b.c_[j];
    }
    rem.resize(b.size() - 1, T::zero_like(b.leading()));
    return {Poly(std::move(quo)), Poly(std::move(rem))};
  }

  friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

  /// Monic gcd over a field.
  friend Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return T::inverse(leading()) * *this;
  }

  /// base^exp mod m.
  friend Poly powmod(Poly base, Integer exp, const Poly& m) {
    Poly result = Poly::constant(T::one_like(m.leading()));
    base = base % m;
    while (exp > 0) {
      if (mpz_odd_p(exp.get_mpz_t())) result = (result * base) % m;
      exp >>= 1;
      if (exp > 0) base = (base * base) % m;
    }
    return result;
  }

 private:
  void trim() {
    while (!c_.empty() && T::is_zero(c_.back())) c_.pop_back();
  }

  template <class X>
  static X zero_of(const X& x) {
    return ScalarTraits<X>::zero_like(x);
  }

  template <class X>
  static X lift(const S& c, const X& like) {
    if constexpr (std::is_same_v<X, S>) {
      (void)like;
      return c;
    } else {
      return ScalarTraits<X>::lift(like, c);
    }
  }

  std::vector<S> c_;
};

/// Polynomial in X with rational coefficients, printed in sparse "c*X^k" form,
/// highest degree first, e.g. "X^2 - 1/2*X + 3".
inline std::string to_string(const Poly<Rat>& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (std::size_t k = f.size(); k-- > 0;) {
    const Rat& c = f[k];
    if (c.is_zero()) continue;
    Rat mag = c.sign() < 0 ? -c : c;
    if (out.empty()) {
      if (c.sign() < 0) out += "-";
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    if (k == 0) {
      out += mag.str();
      continue;
    }
    if (mag != Rat(1)) out += mag.str() + "*";
    out += "X";
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

inline Poly<Rat> to_rat_poly(const Poly<Integer>& f) {
  std::vector<Rat> v;
  v.reserve(f.size());
  for (const Integer& c : f.coeffs()) v.emplace_back(c);
  return Poly<Rat>(std::move(v));
}

}  // namespace padicval
