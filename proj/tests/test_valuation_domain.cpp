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

#include "support.hpp"

namespace padicval {
namespace {

using testing::Rng;

SequenceSpec make_spec(long p, std::vector<std::pair<long, long>> fe, unsigned precision = 64) {
  SequenceSpec s;
  s.p = p;
  s.levels.clear();
  for (auto [f, e] : fe) s.levels.push_back(LevelSpec{f, e});
  s.truncation = s.levels.size() - 1;
  s.precision = precision;
  s.seed = 3;
  return s;
}

RationalFunction F(const std::string& text, long p = 2) { return RationalFunction::parse(text, Integer(p)); }

const StackedSequence& two_adic() {
  static const StackedSequence s = build_prescribed(make_spec(2, {{1, 1}, {2, 1}, {2, 2}, {4, 2}}));
  return s;
}

const StackedSequence& three_adic_long() {
  static const StackedSequence s = build_prescribed(make_spec(3, {{1, 1}, {2, 1}, {2, 2}, {4, 2}, {8, 2}}));
  return s;
}

TEST(RationalFunctionText, NormalizesAndRoundTrips) {
  RationalFunction r = F("X^2 - 1 / X - 1");
  EXPECT_EQ(r.str(), "X + 1 / 1");
  EXPECT_TRUE(r.is_polynomial());
  RationalFunction s = F("1 / 2*X + 4");
  EXPECT_EQ(s.str(), "1/2 / X + 2");
  EXPECT_EQ(F(s.str()), s);
  EXPECT_EQ(F("p / 1").str(), "2 / 1");
  EXPECT_EQ(F("X + 1 / 2"), RationalFunction(parse_rat_poly("1/2*X + 1/2")));
}

TEST(RationalFunctionText, DenominatorErrorColumn) {
  try {
    F("X + 1 / X + $");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 13u);
  }
  try {
    F("1 / 0");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ErrorCode::parse_error);
  }
}

TEST(Valuate, XAgreesWithFirstTermAtThreeLevels) {
  const StackedSequence& seq = two_adic();
  ValuationHandle h = ValuationHandle::over_sequence(seq);
  ValuationResult r = valuate_detailed(h, F("X"));
  EXPECT_EQ(r.level, 1u);
  EXPECT_EQ(r.rechecked, (std::vector<std::size_t>{2, 3}));
  // direct evaluation as oracle: t_0 = 0, so w(X) = v(t_1) = v(a_1 s_1)
  const Rat a1 = Rat(*seq.records[1].a_exponent);
  EXPECT_EQ(ExtVal(r.value), seq.records[1].s->valuation() + ExtVal(a1));
  for (std::size_t n = 1; n <= 3; ++n) EXPECT_EQ(ExtVal(r.value), seq.terms[n].valuation());
}

TEST(Valuate, ConstantAndInverse) {
  ValuationHandle h = ValuationHandle::over_sequence(two_adic());
  EXPECT_EQ(valuate(h, F("p")), Rat(1));
  EXPECT_EQ(valuate(h, F("p / 1")), Rat(1));
  EXPECT_EQ(valuate(h, F("3/8")), Rat(-3));
  const Rat c = valuate(h, F("X"));
  EXPECT_EQ(valuate(h, F("1 / X")), -c);
}

TEST(Valuate, WindowTooShort) {
  ValuationHandle h = ValuationHandle::over_sequence(two_adic());
  try {
    valuate(h, F("X^8 + 1"));
    FAIL() << "expected window-too-short";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::window_too_short);
  }
}

TEST(Valuate, AxiomsOnRandomFunctions) {
  Rng rng(51);
  ValuationHandle h = ValuationHandle::over_sequence(three_adic_long());
  int checked = 0;
  for (int i = 0; i < 80; ++i) {
    Poly<Rat> a = rng.poly(3, 40, 4), b = rng.poly(3, 40, 4), c = rng.poly(2, 40, 4);
    if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
    RationalFunction phi(a, c), psi(b);
    const Rat vphi = valuate(h, phi), vpsi = valuate(h, psi);
    EXPECT_EQ(valuate(h, phi * psi), vphi + vpsi);
    RationalFunction sum = phi + psi;
    if (sum.num().is_zero()) continue;
    const Rat vs = valuate(h, sum);
    EXPECT_GE(vs, min(vphi, vpsi));
    if (vphi != vpsi) {
      EXPECT_EQ(vs, min(vphi, vpsi));
    }
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(Valuate, StabilizesBelowLevelDegree) {
  Rng rng(52);
  const StackedSequence& seq = three_adic_long();
  ValuationHandle h = ValuationHandle::over_sequence(seq);
  for (std::size_t n = 1; n + 2 <= seq.truncation(); ++n) {
    for (int i = 0; i < 15; ++i) {
      const int deg = static_cast<int>(rng.uniform(seq.records[n - 1].degree, seq.records[n].degree - 1));
      std::vector<Rat> c;
      for (int k = 0; k < deg; ++k) c.push_back(rng.rational(30, 5));
      c.push_back(Rat(1));
      Poly<Rat> f(c);
      ValuationResult r = valuate_detailed(h, RationalFunction(f));
      EXPECT_EQ(r.level, n);
      EXPECT_EQ(r.rechecked.size(), 2u);
      for (std::size_t m = n; m <= seq.truncation(); ++m) {
        EXPECT_EQ(r.value, detail::valuation_at(RationalFunction(f), seq.terms[m])) << "level " << m;
      }
    }
  }
}

TEST(Valuate, PseudoLimit) {
  for (const StackedSequence* seq : {&two_adic(), &three_adic_long()}) {
    ValuationHandle h = ValuationHandle::over_sequence(*seq);
    for (std::size_t n = 0; n < seq->truncation(); ++n) {
      Poly<TowerElement> f = Poly<TowerElement>::linear_root(seq->terms[n]);
      ValuationResult r = valuate_detailed(h, f);
      EXPECT_EQ(ExtVal(r.value), seq->gauge[n]) << n;
      EXPECT_EQ(r.level, n + 1);
    }
  }
}

bool in_field_of_size(const TowerElement& r, long f) {
  return r.pow(ipow(r.field().p(), static_cast<unsigned long>(f))) == r;
}

TEST(Residue, Examples) {
  ValuationHandle h = ValuationHandle::over_sequence(two_adic());
  EXPECT_EQ(residue_of(h, F("1")), residue_of(h, F("1")).field().one());
  const ResidueElt r = residue_of(h, F("1 + p*X"));
  EXPECT_EQ(r, r.field().embed(residue_of(h, F("1"))));
  try {
    residue_of(h, F("p"));
    FAIL() << "expected nonzero-valuation";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::nonzero_valuation);
  }
}

TEST(Residue, LowDegreeSearchGeneratesLevelField) {
  for (long p : {2L, 3L, 5L}) {
    StackedSequence seq = build_prescribed(make_spec(p, {{1, 1}, {2, 1}, {2, 2}, {4, 2}}));
    ValuationHandle h = ValuationHandle::over_sequence(seq);
    bool found = false;
    for (long a = -3; a <= 3 && !found; ++a) {
      RationalFunction phi(Poly<Rat>(std::vector<Rat>{Rat(a), Rat(1)}));
      if (valuate(h, phi) != Rat(0)) continue;
      ResidueResult r = residue_of_detailed(h, phi);
      EXPECT_EQ(r.level, 1u);
      ASSERT_EQ(r.value.field().degree(), 2u);
      const bool in_prime_field = in_field_of_size(r.value, 1);
      found = !in_prime_field;
    }
    EXPECT_TRUE(found) << "p = " << p;
  }
}

TEST(Residue, LiesInLevelResidueField) {
  Rng rng(53);
  const StackedSequence& seq = three_adic_long();
  ValuationHandle h = ValuationHandle::over_sequence(seq);
  int checked = 0;
  for (int i = 0; i < 200 && checked < 40; ++i) {
    Poly<Rat> f = rng.poly(5, 20, 3), g = rng.poly(2, 20, 3);
    if (f.is_zero() || g.is_zero()) continue;
    RationalFunction phi(f, g);
    if (phi.degree() >= 8) continue;
    const Rat w = valuate(h, phi);
    if (w != Rat(0)) continue;
    ResidueResult r = residue_of_detailed(h, phi);
    const long fn = seq.records[r.level].f;
    EXPECT_EQ(static_cast<long>(r.value.field().degree()), fn);
    EXPECT_TRUE(in_field_of_size(r.value, fn));
    EXPECT_FALSE(r.value.is_zero());
    ++checked;
  }
  EXPECT_GE(checked, 20);
}

TEST(Member, Examples) {
  ValuationHandle h = ValuationHandle::over_sequence(two_adic());
  ASSERT_GE(valuate(h, F("X")), Rat(-1));
  EXPECT_TRUE(member(h, F("p*X")));
  EXPECT_FALSE(member(h, F("1/2")));
  EXPECT_TRUE(member(h, F("X")));
  EXPECT_TRUE(member(h, F("0")));
}

TEST(AlgebraicPointHandle, ValuesAndRefusal) {
  TowerField t = make_default_eisenstein_step(TowerField::base(2, 40), 2);
  ValuationHandle alg = ValuationHandle::over_point(t.uniformizer(), false);
  EXPECT_EQ(valuate(alg, F("X")), Rat(Integer(1), Integer(2)));
  EXPECT_EQ(valuate(alg, F("X^2 / 2")), Rat(0));
  try {
    member(alg, F("X"));
    FAIL() << "expected refusal";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unsupported);
  }
  try {
    valuate(alg, F("1 / X^2 - 2"));
    FAIL() << "expected denominator-vanishes";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::denominator_vanishes);
  }
  ValuationHandle tr = ValuationHandle::over_point(t.uniformizer() + t.one(), true);
  EXPECT_TRUE(member(tr, F("X")));
  EXPECT_FALSE(member(tr, F("1 / X - 1")));
  EXPECT_EQ(residue_of(tr, F("X")), t.one().residue());
}

TEST(Chains, Examples) {
  StackedSequence seq = build_prescribed(make_spec(3, {{1, 1}, {2, 1}, {2, 2}, {2, 4}}));
  ValuationHandle h = ValuationHandle::over_sequence(seq);
  EXPECT_EQ(value_group_chain(h).values, (std::vector<long>{1, 1, 2, 4}));
  EXPECT_EQ(residue_field_chain(h).values, (std::vector<long>{1, 2, 2, 2}));

  TowerField t = make_default_eisenstein_step(make_unramified_step(TowerField::base(5, 30), 3), 2);
  ValuationHandle pt = ValuationHandle::over_point(t.uniformizer() + t.unramified_generator(), true);
  EXPECT_EQ(value_group_chain(pt).values, std::vector<long>{2});
  EXPECT_EQ(residue_field_chain(pt).values, std::vector<long>{3});

  TowerField b = make_unramified_step(make_default_eisenstein_step(make_unramified_step(TowerField::base(3, 30), 2), 2), 2);
  ValuationHandle odd = ValuationHandle::over_point(b.generator(1) * b.generator(2), true);
  try {
    value_group_chain(odd);
    FAIL() << "expected unknown invariants";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unsupported);
  }
}

TEST(Compositum, Examples) {
  TowerField t = make_default_eisenstein_step(make_unramified_step(TowerField::base(3, 20), 2), 2);
  CompositumReport a = ramification_compositum_test(t, {false, true}, {true, false});
  EXPECT_EQ(a.e_l_over_k2(), 2);
  EXPECT_EQ(a.e1, 2);
  EXPECT_TRUE(a.holds());
  CompositumReport b = ramification_compositum_test(t, {false, true}, {false, true});
  EXPECT_EQ(b.e_l_over_k2(), 1);
  EXPECT_TRUE(b.holds());
  CompositumReport c = ramification_compositum_test(t, {true, false}, {false, true});
  EXPECT_EQ(c.e_l_over_k2(), 1);
  EXPECT_EQ(c.e1, 1);
  EXPECT_TRUE(c.holds());
}

TEST(Compositum, UnstoredLevelUnsupported) {
  TowerField t = make_default_eisenstein_step(make_default_eisenstein_step(TowerField::base(2, 20), 2), 2);
  try {
    ramification_compositum_test(t, {false, true}, {true, false});
    FAIL() << "expected unsupported";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unsupported);
  }
}

}  // namespace
}  // namespace padicval
