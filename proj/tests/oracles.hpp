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

// Conjugate distances straight from Galois groups: Frobenius powers on
// unramified towers and sign changes on towers of X^2 - c steps.

#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "support.hpp"

namespace padicval::testing {

using Automorphism = std::function<TowerElement(const TowerElement&)>;

inline TowerField quadratic(long p, std::vector<long> low, bool ramified, unsigned precision = 40) {
  TowerField q = TowerField::base(p, precision);
  std::vector<std::vector<Integer>> rows;
  for (long v : low) rows.push_back({Integer(v)});
  if (!ramified) return make_unramified_step(q, 2, rows);
  std::vector<TowerElement> c;
  for (long v : low) c.push_back(q.from_integer(v));
  c.push_back(q.one());
  return make_eisenstein_step(q, Poly<TowerElement>(std::move(c)));
}

/// The root of the step-one polynomial of an unramified tower congruent to
/// u^p, by Newton iteration; this is the Frobenius image of u.
inline TowerElement frobenius_of_generator(const TowerField& t) {
  const TowerElement u = t.generator(1);
  std::vector<TowerElement> c;
  for (const auto& row : t.step(0).coeffs) c.push_back(t.from_integer(row[0]));
  c.push_back(t.one());
  const Poly<TowerElement> g(c);
  const Poly<TowerElement> dg = g.derivative();
  TowerElement y = u.pow(t.p());
  for (unsigned reach = 1; reach < 2 * t.precision(); reach *= 2) y = y - g(y) * dg(y).inverse();
  return y;
}

/// x with its single generator replaced by y.
inline TowerElement substitute(const TowerElement& x, const TowerElement& y) {
  const TowerField& t = x.field();
  TowerElement out = t.zero(), power = t.one();
  for (const Integer& c : x.coords()) {
    out = out + c * power;
    power = power * y;
  }
  return out;
}

inline std::vector<Automorphism> unramified_galois_group(const TowerField& t) {
  std::vector<Automorphism> g;
  TowerElement image = t.generator(1);
  const TowerElement frob = frobenius_of_generator(t);
  for (std::size_t k = 1; k < t.degree(); ++k) {
    image = substitute(image, frob);
    g.push_back([image](const TowerElement& x) { return substitute(x, image); });
  }
  return g;
}

/// Sign changes on the generators of a tower of steps X^2 - c.
inline std::vector<Automorphism> sign_changes(const TowerField& t) {
  std::vector<Automorphism> g;
  const std::size_t k = t.num_steps();
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    g.push_back([mask, k](const TowerElement& x) {
      std::vector<Integer> c = x.coords();
      for (std::size_t i = 0; i < c.size(); ++i) {
        unsigned parity = 0;
        for (std::size_t s = 0; s < k; ++s)
          if ((mask >> s) & 1u) parity ^= static_cast<unsigned>((i >> s) & 1u);
        if (parity) c[i] = -c[i];
      }
      return x.field().element(std::move(c));
    });
  }
  return g;
}

/// Distances from x to its distinct conjugates, read off the Galois group.
inline std::vector<Rat> direct_distances(const TowerElement& x, const std::vector<Automorphism>& group) {
  std::vector<Rat> d;
  std::size_t stabilizer = 1;
  for (const Automorphism& g : group) {
    TowerElement diff = x - g(x);
    if (diff.is_zero()) {
      ++stabilizer;
      continue;
    }
    d.push_back(diff.valuation().value());
  }
  std::sort(d.begin(), d.end());
  std::vector<Rat> out;
  for (std::size_t i = 0; i < d.size(); i += stabilizer) out.push_back(d[i]);
  return out;
}

}  // namespace padicval::testing
