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

#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"

namespace padicval {
namespace {

using testing::Rng;

Poly<Rat> P(std::vector<long> c) {
  std::vector<Rat> r;
  for (long v : c) r.emplace_back(v);
  return Poly<Rat>(std::move(r));
}

std::vector<Rat> R(std::initializer_list<std::pair<long, long>> v) {
  std::vector<Rat> out;
  for (auto [a, b] : v) out.emplace_back(Integer(a), Integer(b));
  return out;
}

TEST(NewtonPolygon, EisensteinSingleSegment) {
  for (long p : {2L, 3L, 5L, 7L}) {
    NPolygon np = newton_polygon(P({-p, 0, 1}), p);
    ASSERT_EQ(np.segments.size(), 1u);
    EXPECT_EQ(np.segments[0], (NSegment{Rat(Integer(-1), Integer(2)), 2}));
    EXPECT_EQ(root_valuations(np), R({{1, 2}, {1, 2}}));
  }
}

TEST(NewtonPolygon, TwoSegments) {
  // hull of (0,1), (1,0), (2,0)
  NPolygon np = newton_polygon(P({3, 1, 1}), 3);
  ASSERT_EQ(np.segments.size(), 2u);
  EXPECT_EQ(np.segments[0], (NSegment{Rat(-1), 1}));
  EXPECT_EQ(np.segments[1], (NSegment{Rat(0), 1}));
  EXPECT_EQ(np.vertices, (std::vector<NVertex>{{0, Rat(1)}, {1, Rat(0)}, {2, Rat(0)}}));
  EXPECT_EQ(root_valuations(np), R({{0, 1}, {1, 1}}));
}

TEST(NewtonPolygon, PurePowerIsEmpty) {
  NPolygon np = newton_polygon(P({0, 0, 0, 1}), 2);
  EXPECT_TRUE(np.segments.empty());
  EXPECT_EQ(np.order_at_zero, 3);
  EXPECT_TRUE(root_valuations(np).empty());
}

TEST(NewtonPolygon, ProductOfTwoLinearFactors) {
  for (long p : {2L, 3L, 5L}) {
    // (X - p)(X - p^2) = X^2 - (p + p^2) X + p^3
    EXPECT_EQ(root_valuations(P({p * p * p, -(p + p * p), 1}), p), R({{1, 1}, {2, 1}}));
  }
}

TEST(NewtonPolygon, ZeroPolynomialRejected) {
  try {
    newton_polygon(Poly<Rat>(), 2);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::domain_error);
  }
}

TEST(NewtonPolygon, HullInvariants) {
  Rng rng(31);
  for (int i = 0; i < 400; ++i) {
    Poly<Rat> f = rng.poly(8, 200, 20);
    if (f.is_zero()) continue;
    const long p = std::vector<long>{2, 3, 5}[static_cast<std::size_t>(rng.uniform(0, 2))];
    NPolygon np = newton_polygon(f, p);
    long total = 0;
    for (std::size_t s = 0; s < np.segments.size(); ++s) {
      total += np.segments[s].length;
      if (s > 0) {
        EXPECT_GT(np.segments[s].slope, np.segments[s - 1].slope);
      }
    }
    EXPECT_EQ(total, f.degree() - np.order_at_zero);
    // every point lies on or above the hull
    for (std::size_t k = 0; k < f.size(); ++k) {
      if (f[k].is_zero()) continue;
      const Rat v = vp_rational(f[k], p).value();
      for (std::size_t s = 0; s + 1 < np.vertices.size(); ++s) {
        const NVertex &a = np.vertices[s], &b = np.vertices[s + 1];
        const long idx = static_cast<long>(k);
        if (idx < a.index || idx > b.index) continue;
        EXPECT_GE(v, a.value + np.segments[s].slope * Rat(idx - a.index));
      }
    }
  }
}

TEST(RootValuations, SumMatchesConstantOverLeading) {
  Rng rng(32);
  for (int i = 0; i < 300; ++i) {
    Poly<Rat> f = rng.poly(7, 500, 30);
    if (f.degree() < 1 || f[0].is_zero()) continue;
    for (long p : {2L, 3L, 5L}) {
      Rat sum(0);
      for (const Rat& r : root_valuations(f, p)) sum += r;
      EXPECT_EQ(ExtVal(sum), vp_rational(f[0] / f.leading(), p));
    }
  }
}

TEST(RootValuations, ProductIsUnion) {
  Rng rng(33);
  for (int i = 0; i < 300; ++i) {
    Poly<Rat> f = rng.poly(4, 300, 12), g = rng.poly(4, 300, 12);
    if (f.is_zero() || g.is_zero()) continue;
    for (long p : {2L, 3L}) {
      std::vector<Rat> u = root_valuations(f, p), b = root_valuations(g, p);
      u.insert(u.end(), b.begin(), b.end());
      std::sort(u.begin(), u.end());
      EXPECT_EQ(root_valuations(f * g, p), u);
    }
  }
}

TEST(RootValuations, TowerProductsOfLinearFactors) {
  Rng rng(34);
  std::vector<TowerField> towers{
      make_default_eisenstein_step(TowerField::base(2, 40), 2),
      make_default_eisenstein_step(make_unramified_step(TowerField::base(3, 40), 2), 3),
  };
  for (const TowerField& t : towers) {
    for (int i = 0; i < 40; ++i) {
      Poly<TowerElement> f = Poly<TowerElement>::constant(t.one());
      std::vector<Rat> expected;
      const long deg = rng.uniform(1, 4);
      for (long k = 0; k < deg; ++k) {
        std::vector<Integer> c(t.degree());
        for (auto& x : c) x = Integer(rng.uniform(0, 30));
        TowerElement r = t.element(std::move(c));
        if (r.is_zero()) r = t.uniformizer();
        expected.push_back(r.valuation().value());
        f = f * Poly<TowerElement>::linear_root(r);
      }
      std::sort(expected.begin(), expected.end());
      EXPECT_EQ(root_valuations(f), expected);
    }
  }
}

TEST(NewtonPolygon, UndeterminedCoefficientBelowHull) {
  std::vector<CoeffValuation> cv{CoeffValuation::exact(Rat(4)), CoeffValuation::at_least(Rat(1)),
                                 CoeffValuation::exact(Rat(0))};
  try {
    newton_polygon(cv);
    FAIL() << "expected below-precision";
  } catch (const PrecisionError& e) {
    EXPECT_EQ(e.code(), ErrorCode::below_precision);
  }
  cv[1] = CoeffValuation::at_least(Rat(3));
  EXPECT_EQ(root_valuations(newton_polygon(cv)), R({{2, 1}, {2, 1}}));
}

}  // namespace
}  // namespace padicval
