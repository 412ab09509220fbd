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

// Shared helpers for the test programs: seeded random inputs and small
// oracles that avoid the library code paths they check.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "padicval.hpp"

namespace padicval::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g_); }
  bool coin() { return uniform(0, 1) == 1; }

  Rat rational(long span, long max_den) {
    return Rat(Integer(uniform(-span, span)), Integer(uniform(1, max_den)));
  }

  Poly<Rat> poly(int max_degree, long span, long max_den) {
    std::vector<Rat> c;
    const int d = static_cast<int>(uniform(0, max_degree));
    for (int i = 0; i <= d; ++i) c.push_back(rational(span, max_den));
    return Poly<Rat>(std::move(c));
  }

  std::mt19937_64& engine() { return g_; }

 private:
  std::mt19937_64 g_;
};

/// Exponent of p in a nonzero integer by repeated division.
inline long naive_vp(Integer n, const Integer& p) {
  if (n < 0) n = -n;
  long k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  return k;
}

inline Rat naive_vp(const Rat& q, const Integer& p) {
  return Rat(naive_vp(q.num(), p) - naive_vp(q.den(), p));
}

/// Valuation of a tower element straight from the definition on the flat
/// basis: every coordinate index decomposes in mixed radix over the steps,
/// and each Eisenstein digit j contributes j / e_total * (e of the steps
/// below it). Only for elements with exact (nonzero) coordinates.
inline Rat basis_valuation(const TowerField& t, std::size_t index) {
  Rat v(0);
  std::size_t stride = 1;
  for (std::size_t k = 0; k < t.num_steps(); ++k) {
    const std::size_t r = t.step(k).degree();
    const std::size_t digit = (index / stride) % r;
    if (t.step(k).kind == TowerStep::Kind::eisenstein)
      v += Rat(Integer(static_cast<long>(digit)), Integer(t.e_at(k + 1)));
    stride *= r;
  }
  return v;
}

}  // namespace padicval::testing
