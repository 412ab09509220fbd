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
#include <numeric>

#include "support.hpp"

namespace padicval {
namespace {

using testing::Rng;

/// pi + c in Q_p(pi), pi^e = p; generates a field with ramification e.
ElementSpec ramified_point(long p, long e, long c, bool transcendental = true) {
  TowerField base = TowerField::base(p, 24);
  TowerField t = e == 1 ? base : make_default_eisenstein_step(base, static_cast<std::size_t>(e));
  TowerElement x = (e == 1 ? t.from_integer(p) : t.uniformizer()) + t.from_integer(c);
  return ElementSpec{"a" + std::to_string(p) + "_" + std::to_string(e) + "_" + std::to_string(c),
                     AlgebraicTranscendental{x, transcendental}};
}

ElementSpec sequence_point(long p, RamificationTail tail, std::string label = "s") {
  SequenceSpec s;
  s.p = p;
  s.levels = {LevelSpec{1, 1}, LevelSpec{2, 1}, LevelSpec{2, 2}, LevelSpec{4, 2}};
  s.truncation = 3;
  s.precision = 64;
  s.seed = 5;
  s.e_tail = tail;
  return ElementSpec{std::move(label), SequenceBacked{s, std::nullopt}};
}

IntConfig config(std::vector<std::pair<long, std::vector<ElementSpec>>> entries) {
  IntConfig cfg;
  for (auto& [p, els] : entries) cfg.primes.push_back(PrimeEntry{Integer(p), std::move(els), false});
  return cfg;
}

TEST(Dedekind, Verdicts) {
  EXPECT_TRUE(classify_dedekind(config({{2, {ramified_point(2, 2, 0)}}})).dedekind);
  EXPECT_TRUE(classify_dedekind(config({{3, {sequence_point(3, RamificationTail::stationary)}}})).dedekind);

  DedekindVerdict a = classify_dedekind(config({{3, {sequence_point(3, RamificationTail::unbounded)}}}));
  EXPECT_FALSE(a.dedekind);
  EXPECT_NE(a.reason.find("bounded ramification violated"), std::string::npos);

  DedekindVerdict b = classify_dedekind(config({{3, {sequence_point(3, RamificationTail::undeclared)}}}));
  EXPECT_FALSE(b.dedekind);
  EXPECT_NE(b.reason.find("not declared"), std::string::npos);

  DedekindVerdict c = classify_dedekind(config({{2, {ramified_point(2, 2, 0, false)}}}));
  EXPECT_FALSE(c.dedekind);
  EXPECT_NE(c.reason.find("rank-2"), std::string::npos);
  EXPECT_EQ(c.str().rfind("NotDedekind(", 0), 0u);
}

TEST(Dedekind, DeclaredEMustMatchChain) {
  ElementSpec s = sequence_point(3, RamificationTail::stationary);
  std::get<SequenceBacked>(s.body).declared_e = 3;
  try {
    classify_dedekind(config({{3, {s}}}));
    FAIL() << "expected invalid-argument";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_argument);
  }
}

TEST(Dedekind, ConfigValidation) {
  try {
    class_group(config({{4, {ramified_point(2, 1, 0)}}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_argument);
  }
  try {
    class_group(config({{3, {ramified_point(2, 1, 0)}}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_argument);
  }
  try {
    class_group(config({{3, {sequence_point(3, RamificationTail::unbounded)}}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::domain_error);
  }
}

TEST(ClassGroup, Examples) {
  EXPECT_EQ(class_group(config({{2, {ramified_point(2, 2, 0)}}})).str(), "Z/2Z");
  EXPECT_EQ(class_group(config({{2, {ramified_point(2, 2, 0), ramified_point(2, 4, 1)}}})).str(), "Z/2Z (+) Z");
  EXPECT_EQ(class_group(config({{2, {ramified_point(2, 1, 0)}}})).str(), "0");
  EXPECT_EQ(class_group(config({{2, {ramified_point(2, 2, 0)}}, {5, {ramified_point(5, 3, 1)}}})).str(),
            "Z/2Z (+) Z/3Z");
  EXPECT_EQ(class_group(config({{3, {ramified_point(3, 2, 0), ramified_point(3, 3, 1)}}})).str(), "Z");
  EXPECT_EQ(class_group(config({{3, {ramified_point(3, 2, 0), ramified_point(3, 3, 1), ramified_point(3, 1, 1)}},
                                {7, {ramified_point(7, 1, 0), ramified_point(7, 2, 1)}}}))
                .str(),
            "Z^3");
  EXPECT_EQ(class_group(config({{3, {sequence_point(3, RamificationTail::stationary)}}})).str(), "Z/2Z");
}

TEST(ClassGroup, ConjugatePointsMerge) {
  // pi and -pi are conjugate roots of X^2 - 2
  TowerField t = make_default_eisenstein_step(TowerField::base(2, 24), 2);
  ElementSpec a{"a", AlgebraicTranscendental{t.uniformizer(), true}};
  ElementSpec b{"b", AlgebraicTranscendental{t.zero() - t.uniformizer(), true}};
  EXPECT_EQ(conjugacy_check(a, b), Conjugacy::conjugate);
  EXPECT_EQ(class_group(config({{2, {a, b}}})).str(), "Z/2Z");
  EXPECT_EQ(conjugacy_check(a, ramified_point(2, 2, 1)), Conjugacy::not_conjugate);
}

TEST(ClassGroup, SequencePointsNeedDeclaredNonconjugacy) {
  IntConfig cfg = config({{3, {sequence_point(3, RamificationTail::stationary, "s1"),
                              sequence_point(3, RamificationTail::stationary, "s2")}}});
  EXPECT_EQ(conjugacy_check(cfg.primes[0].elements[0], cfg.primes[0].elements[1]),
            Conjugacy::indistinguishable);
  try {
    class_group(cfg);
    FAIL() << "expected unverified-nonconjugacy";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unverified_nonconjugacy);
  }
  cfg.primes[0].declared_nonconjugate = true;
  EXPECT_EQ(class_group(cfg).str(), "Z/2Z (+) Z");
  EXPECT_EQ(conjugacy_check(cfg.primes[0].elements[0], ramified_point(3, 2, 0)), Conjugacy::not_conjugate);
}

struct RandomConfig {
  IntConfig cfg;
  std::vector<std::vector<long>> es;
};

RandomConfig random_config(Rng& rng) {
  static const long primes[] = {2, 3, 5, 7};
  static const long ramifications[] = {1, 2, 3, 4, 6};
  RandomConfig rc;
  const long count = rng.uniform(1, 3);
  for (long i = 0; i < count; ++i) {
    const long p = primes[i + rng.uniform(0, 1)];
    if (!rc.cfg.primes.empty() && rc.cfg.primes.back().p == p) continue;
    PrimeEntry pe{Integer(p), {}, false};
    std::vector<long> es;
    const long k = rng.uniform(1, 3);
    for (long j = 0; j < k; ++j) {
      const long e = ramifications[rng.uniform(0, 4)];
      pe.elements.push_back(ramified_point(p, e, j));
      es.push_back(e);
    }
    rc.cfg.primes.push_back(pe);
    rc.es.push_back(es);
  }
  return rc;
}

std::vector<ClassGroupSummand> sorted(std::vector<ClassGroupSummand> s) {
  std::sort(s.begin(), s.end(), [](const auto& a, const auto& b) { return a.p < b.p; });
  return s;
}

TEST(ClassGroupProperties, MatchesGcdOracleAndPid) {
  Rng rng(71);
  for (int i = 0; i < 30; ++i) {
    RandomConfig rc = random_config(rng);
    ClassGroupDesc g = class_group(rc.cfg);
    bool pid = true;
    for (std::size_t k = 0; k < rc.es.size(); ++k) {
      const long t = std::accumulate(rc.es[k].begin(), rc.es[k].end(), 0L,
                                     [](long a, long b) { return std::gcd(a, b); });
      EXPECT_EQ(g.summands[k].torsion, t);
      EXPECT_EQ(g.summands[k].free_rank, static_cast<long>(rc.es[k].size()) - 1);
      pid = pid && t == 1 && rc.es[k].size() == 1;
    }
    EXPECT_EQ(is_pid(rc.cfg), pid);
    EXPECT_EQ(g.trivial(), g.str() == "0");
  }
}

TEST(ClassGroupProperties, PermutationInvariance) {
  Rng rng(72);
  for (int i = 0; i < 20; ++i) {
    RandomConfig rc = random_config(rng);
    IntConfig shuffled = rc.cfg;
    std::shuffle(shuffled.primes.begin(), shuffled.primes.end(), rng.engine());
    for (PrimeEntry& pe : shuffled.primes) std::shuffle(pe.elements.begin(), pe.elements.end(), rng.engine());
    EXPECT_EQ(sorted(class_group(rc.cfg).summands), sorted(class_group(shuffled).summands));
  }
}

TEST(ClassGroupProperties, AddingAnOrbit) {
  Rng rng(73);
  static const long ramifications[] = {1, 2, 3, 4, 6};
  for (int i = 0; i < 20; ++i) {
    RandomConfig rc = random_config(rng);
    ClassGroupDesc before = class_group(rc.cfg);
    const std::size_t k = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(rc.cfg.primes.size()) - 1));
    const long p = rc.cfg.primes[k].p.get_si();
    rc.cfg.primes[k].elements.push_back(ramified_point(p, ramifications[rng.uniform(0, 4)], 10 + i));
    ClassGroupDesc after = class_group(rc.cfg);
    EXPECT_EQ(before.summands[k].torsion % after.summands[k].torsion, 0);
    EXPECT_EQ(after.summands[k].free_rank, before.summands[k].free_rank + 1);
    for (std::size_t j = 0; j < rc.cfg.primes.size(); ++j)
      if (j != k) {
        EXPECT_EQ(after.summands[j], before.summands[j]);
      }
  }
}

TEST(Witness, Examples) {
  IntConfig half = config({{2, {ramified_point(2, 2, 0)}}});
  FactorizabilityWitness w = factorizability_witness(half, Poly<Integer>::monomial(Integer(1), 1));
  ASSERT_TRUE(w.found);
  EXPECT_EQ(w.n, 2);
  EXPECT_EQ(w.d, 2);
  EXPECT_EQ(w.str(), "(n, d) = (2, 2)");

  FactorizabilityWitness one = factorizability_witness(half, Poly<Integer>::constant(Integer(1)));
  EXPECT_TRUE(one.found);
  EXPECT_EQ(one.n, 1);
  EXPECT_EQ(one.d, 1);

  // v(X) = 1/2 at one point and 1/3 at the other
  IntConfig split = config({{2, {ramified_point(2, 2, 0), ramified_point(2, 3, 0)}}});
  FactorizabilityWitness none = factorizability_witness(split, Poly<Integer>::monomial(Integer(1), 1));
  EXPECT_FALSE(none.found);
  EXPECT_EQ(none.str().rfind("CannotWitness(", 0), 0u);
}

TEST(Witness, UnitProperty) {
  Rng rng(74);
  IntConfig cfg = config({{2, {ramified_point(2, 2, 0), ramified_point(2, 2, 2)}},
                          {3, {ramified_point(3, 3, 0)}},
                          {5, {ramified_point(5, 4, 0)}}});
  int found = 0;
  for (int i = 0; i < 25; ++i) {
    std::vector<Integer> c;
    const long deg = rng.uniform(1, 3);
    for (long k = 0; k <= deg; ++k) c.push_back(Integer(rng.uniform(-30, 30)));
    c.back() = c.back() == 0 ? Integer(1) : c.back();
    Poly<Integer> g(c);
    FactorizabilityWitness w = factorizability_witness(cfg, g);
    if (!w.found) continue;
    ++found;
    // g(x)^n / d has value zero at every listed point
    for (const PrimeEntry& pe : cfg.primes) {
      for (const ElementSpec& x : pe.elements) {
        const TowerElement& a = x.point().x;
        TowerElement gx = a.field().zero();
        for (std::size_t k = c.size(); k-- > 0;) gx = gx * a + a.field().from_integer(c[k]);
        const Rat vg = gx.valuation().value();
        EXPECT_EQ(vg * Rat(w.n), Rat(testing::naive_vp(w.d, pe.p)));
      }
    }
  }
  EXPECT_GT(found, 5);
}

}  // namespace
}  // namespace padicval
