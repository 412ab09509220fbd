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
#include <vector>

#include "padicval/rational.hpp"
#include "padicval/tower.hpp"

namespace padicval {

using Matrix = std::vector<std::vector<Integer>>;

/// det(X*I - A) mod m, constant term first. Berkowitz's algorithm uses no
/// division, so the result is exact in Z/m for any modulus.
inline std::vector<Integer> charpoly_berkowitz(const Matrix& a, const Integer& m) {
  const std::size_t n = a.size();
  std::vector<Integer> c{1};  // highest degree first
  for (std::size_t r = 1; r <= n; ++r) {
    const std::size_t s = r - 1;  // size of the leading block
    std::vector<Integer> q(r + 1);
    q[0] = 1;
    q[1] = mod(-a[s][s], m);
    std::vector<Integer> w(s);
    for (std::size_t i = 0; i < s; ++i) w[i] = a[i][s];
    for (std::size_t k = 2; k <= r; ++k) {
      Integer dot = 0;
      for (std::size_t i = 0; i < s; ++i) dot += a[s][i] * w[i];
      q[k] = mod(-dot, m);
      if (k == r) break;
      std::vector<Integer> nw(s);
      for (std::size_t i = 0; i < s; ++i) {
        Integer acc = 0;
        for (std::size_t j = 0; j < s; ++j) acc += a[i][j] * w[j];
        nw[i] = mod(acc, m);
      }
      w = std::move(nw);
    }
    std::vector<Integer> next(r + 1);
    for (std::size_t i = 0; i <= r; ++i) {
      Integer acc = 0;
      for (std::size_t j = 0; j < c.size() && j <= i; ++j) acc += q[i - j] * c[j];
      next[i] = mod(acc, m);
    }
    c = std::move(next);
  }
  return std::vector<Integer>(c.rbegin(), c.rend());
}

/// Matrix of y -> x*y on the tower basis; column j holds x * e_j.
inline Matrix multiplication_matrix(const TowerElement& x) {
  const TowerField& k = x.field();
  const std::size_t n = k.degree();
  Matrix a(n, std::vector<Integer>(n));
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Integer> e(n);
    e[j] = 1;
    TowerElement col = x * k.element(std::move(e));
    for (std::size_t i = 0; i < n; ++i) a[i][j] = col.coords()[i];
  }
  return a;
}

/// Incremental echelon form over Q_p for vectors known mod p^N. Pivots are
/// entries of minimal valuation, so eliminating against a row never costs
/// absolute precision; the only loss comes from scaling a vector by p^s to
/// reach a pivot, which is tracked.
class PadicEchelon {
 public:
  struct Reduction {
    std::vector<Integer> residual;
    std::vector<Integer> lambda;  // over the generators added so far
    unsigned long scale = 0;      // residual = p^scale * w + sum lambda_i g_i
    bool residual_zero() const { return detail::block_is_zero(residual.data(), residual.size()); }
  };

  PadicEchelon(Integer p, unsigned precision, std::size_t dim)
      : p_(std::move(p)), precision_(precision), modulus_(ipow(p_, precision)), dim_(dim) {}

  std::size_t size() const { return rows_.size(); }

  /// Sum of pivot valuations and generator scalings; bounds the precision a
  /// solved combination loses.
  unsigned long loss() const { return loss_; }

  Reduction reduce(const std::vector<Integer>& w) const {
    Reduction red;
    red.residual.resize(dim_);
    for (std::size_t i = 0; i < dim_; ++i) red.residual[i] = mod(w[i], modulus_);
    red.lambda.assign(rows_.size(), Integer(0));
    for (const Row& row : rows_) {
      Integer x = red.residual[row.pivot];
      if (x == 0) continue;
      unsigned long mu = vp_integer(x, p_);
      if (mu < row.nu) {
        Integer sc = ipow(p_, row.nu - mu);
        for (auto& v : red.residual) v = mod(v * sc, modulus_);
        for (auto& l : red.lambda) l = mod(l * sc, modulus_);
        red.scale += row.nu - mu;
        x = red.residual[row.pivot];
        if (x == 0) continue;
      }
      Integer q;
      mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), ipow(p_, row.nu).get_mpz_t());
      q = mod(q * row.unit_inverse, modulus_);
      for (std::size_t i = 0; i < dim_; ++i) red.residual[i] = mod(red.residual[i] - q * row.b[i], modulus_);
      for (std::size_t i = 0; i < row.lambda.size(); ++i)
        red.lambda[i] = mod(red.lambda[i] - q * row.lambda[i], modulus_);
    }
    return red;
  }

  /// Adds a generator. Returns false (and adds nothing) when it reduces to
  /// zero mod p^N.
  bool add(const std::vector<Integer>& v) {
    Reduction red = reduce(v);
    if (red.residual_zero()) return false;
    Row row;
    row.b = std::move(red.residual);
    row.lambda = std::move(red.lambda);
    row.lambda.push_back(ipow(p_, red.scale) % modulus_);
    std::size_t best = dim_;
    unsigned long best_v = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
      if (row.b[i] == 0) continue;
      unsigned long vi = vp_integer(row.b[i], p_);
      if (best == dim_ || vi < best_v) {
        best = i;
        best_v = vi;
      }
    }
    row.pivot = best;
    row.nu = best_v;
    Integer unit;
    mpz_divexact(unit.get_mpz_t(), row.b[best].get_mpz_t(), ipow(p_, best_v).get_mpz_t());
    mpz_invert(row.unit_inverse.get_mpz_t(), unit.get_mpz_t(), modulus_.get_mpz_t());
    loss_ += best_v + red.scale;
    for (auto& r : rows_) r.lambda.push_back(0);
    rows_.push_back(std::move(row));
    return true;
  }

 private:
  struct Row {
    std::vector<Integer> b;
    std::vector<Integer> lambda;
    std::size_t pivot = 0;
    unsigned long nu = 0;
    Integer unit_inverse;
  };

  Integer p_;
  unsigned precision_;
  Integer modulus_;
  std::size_t dim_;
  std::vector<Row> rows_;
  unsigned long loss_ = 0;
};

}  // namespace padicval
