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

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

#include "padicval/errors.hpp"

namespace padicval {

using Integer = mpz_class;

inline Integer ipow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

/// Least non-negative residue.
inline Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

/// Residue in (-m/2, m/2], used for display of p-adic approximations.
inline Integer symmetric_mod(const Integer& a, const Integer& m) {
  Integer r = mod(a, m);
  if (2 * r > m) r -= m;
  return r;
}

inline bool is_prime(const Integer& p) {
  return p >= 2 && mpz_probab_prime_p(p.get_mpz_t(), 40) > 0;
}

inline void require_prime(const Integer& p) {
  if (!is_prime(p)) fail(ErrorCode::invalid_argument, "not a prime: " + p.get_str());
}

/// Exponent of p in a nonzero integer.
inline unsigned long vp_integer(const Integer& a, const Integer& p) {
  Integer rest;
  return mpz_remove(rest.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer parse_integer(const std::string& s) {
  Integer r;
  if (s.empty() || r.set_str(s, 10) != 0)
    fail(ErrorCode::parse_error, "malformed integer '" + s + "'");
  return r;
}

/// Exact rational, always reduced with positive denominator.
class Rat {
 public:
  Rat() = default;
  Rat(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(const Integer& v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(const Integer& num, const Integer& den) {
    if (den == 0) fail(ErrorCode::domain_error, "zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }

  static Rat parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(parse_integer(s));
    return Rat(parse_integer(s.substr(0, slash)), parse_integer(s.substr(slash + 1)));
  }

  Integer num() const { return q_.get_num(); }
  Integer den() const { return q_.get_den(); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  /// Largest integer not exceeding the value.
  Integer floor() const {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
  }

  /// "a/b", or "a" when the denominator is one.
  std::string str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) fail(ErrorCode::domain_error, "division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) {
    Rat r;
    r.q_ = -a.q_;
    return r;
  }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

 private:
  mpq_class q_;
};

inline Rat min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

/// A value in Q extended by -infinity and +infinity. Valuations only ever
/// produce Finite or Infinity; NegInfinity marks an empty supremum.
class ExtVal {
 public:
  enum class Kind { neg_infinity, finite, infinity };

  ExtVal() : kind_(Kind::finite) {}
  ExtVal(const Rat& v) : kind_(Kind::finite), value_(v) {}  // NOLINT(google-explicit-constructor)
  ExtVal(long v) : kind_(Kind::finite), value_(v) {}  // NOLINT(google-explicit-constructor)

  static ExtVal infinity() { return ExtVal(Kind::infinity); }
  static ExtVal neg_infinity() { return ExtVal(Kind::neg_infinity); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  bool is_infinity() const { return kind_ == Kind::infinity; }
  bool is_neg_infinity() const { return kind_ == Kind::neg_infinity; }

  const Rat& value() const {
    if (!is_finite()) fail(ErrorCode::domain_error, "value of a non-finite ExtVal");
    return value_;
  }

  std::string str() const {
    switch (kind_) {
      case Kind::infinity: return "inf";
      case Kind::neg_infinity: return "-inf";
      case Kind::finite: break;
    }
    return value_.str();
  }

  static ExtVal parse(const std::string& s) {
    if (s == "inf") return infinity();
    if (s == "-inf") return neg_infinity();
    return ExtVal(Rat::parse(s));
  }

  friend bool operator==(const ExtVal& a, const ExtVal& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::finite || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const ExtVal& a, const ExtVal& b) {
    if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
    if (a.kind_ != Kind::finite) return std::strong_ordering::equal;
    return a.value_ <=> b.value_;
  }

  /// Sum in the valuation sense: infinity absorbs. Mixing +inf and -inf is
  /// meaningless and rejected.
  friend ExtVal operator+(const ExtVal& a, const ExtVal& b) {
    if ((a.is_infinity() && b.is_neg_infinity()) || (a.is_neg_infinity() && b.is_infinity()))
      fail(ErrorCode::domain_error, "inf + -inf");
    if (!a.is_finite()) return a;
    if (!b.is_finite()) return b;
    return ExtVal(a.value_ + b.value_);
  }
  friend ExtVal operator-(const ExtVal& a, const Rat& b) {
    if (!a.is_finite()) return a;
    return ExtVal(a.value_ - b);
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtVal& v) { return os << v.str(); }

 private:
  explicit ExtVal(Kind k) : kind_(k) {}

  Kind kind_;
  Rat value_;
};

/// Exponent of p in q; Infinity exactly when q = 0.
inline ExtVal vp_rational(const Rat& q, const Integer& p) {
  require_prime(p);
  if (q.is_zero()) return ExtVal::infinity();
  long up = static_cast<long>(vp_integer(q.num(), p));
  long down = static_cast<long>(vp_integer(q.den(), p));
  return ExtVal(Rat(up - down));
}

/// Image of a p-integral rational in Z/m with m a power of p. The denominator
/// must be a unit mod p.
inline Integer reduce_p_integral(const Rat& q, const Integer& m) {
  Integer inv;
  Integer den = q.den();
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
    fail(ErrorCode::domain_error, "rational " + q.str() + " is not p-integral");
  return mod(q.num() * inv, m);
}

}  // namespace padicval
