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

TowerField sample_tower() {
  TowerField t = make_unramified_step(TowerField::base(3, 30), 2);
  t = make_default_eisenstein_step(t, 2);
  return make_unramified_step(t, 3);
}

TEST(TowerJson, RoundTrip) {
  const TowerField t = sample_tower();
  const Json j = tower_to_json(t);
  const TowerField back = tower_from_json(j);
  EXPECT_TRUE(back.same_as(t));
  EXPECT_EQ(back.describe(), "Q_3 -U -E -U (e=2, f=6, d=12)");
  EXPECT_EQ(tower_to_json(back).dump(), j.dump());
  EXPECT_EQ(tower_from_json(j, 60u).precision(), 60u);
}

TEST(TowerJson, PolynomialText) {
  const Json j = parse_json_text(R"({"prime": 2, "precision": 48, "steps": [
      {"kind": "unramified", "degree": 2, "poly": "X^2 + X + 1"},
      {"kind": "eisenstein", "degree": 2, "poly": "X^2 - 2*g1"}]})");
  const TowerField t = tower_from_json(j);
  EXPECT_EQ(t.e(), 2);
  EXPECT_EQ(t.f(), 2);
  const TowerElement pi = t.uniformizer();
  EXPECT_EQ(pi * pi, t.from_integer(2) * t.generator(1));
  EXPECT_TRUE(tower_from_json(tower_to_json(t)).same_as(t));
}

TEST(TowerJson, Rejections) {
  for (const char* text : {R"({"prime": 4, "precision": 10, "steps": []})",
                           R"({"prime": 2, "precision": 10, "steps": [{"kind": "eisenstein", "degree": 2, "poly": "X^2 - 4"}]})",
                           R"({"prime": 2, "steps": []})"}) {
    try {
      tower_from_json(parse_json_text(text));
      ADD_FAILURE() << text;
    } catch (const Error&) {
    }
  }
}

TEST(ElementJson, CoordsAndExpressions) {
  const TowerField t = sample_tower();
  Rng rng(81);
  for (int i = 0; i < 20; ++i) {
    std::vector<Integer> c;
    for (std::size_t k = 0; k < t.degree(); ++k) c.push_back(Integer(rng.uniform(-1000, 1000)));
    const TowerElement x = t.element(c);
    EXPECT_EQ(coords_from_json(t, coords_to_json(x), ""), x);
  }
  EXPECT_EQ(element_from_json(t, Json("g2^2"), ""), t.generator(2) * t.generator(2));
  EXPECT_EQ(parse_element(t, "p + 1/2*g1"), t.from_integer(3) + t.from_rational(Rat(Integer(1), Integer(2))) * t.generator(1));
}

TEST(SpecJson, RoundTrip) {
  SequenceSpec s;
  s.p = 5;
  s.levels = {LevelSpec{1, 1}, LevelSpec{2, 1}, LevelSpec{2, 2}};
  s.lambda = std::vector<Rat>{Rat(1), Rat(Integer(7), Integer(2))};
  s.truncation = 2;
  s.precision = 40;
  s.seed = 99;
  s.e_tail = RamificationTail::unbounded;
  s.gauge_tail = GaugeTail{GaugeTail::Kind::bounded, Rat(10)};
  const Json j = spec_to_json(s);
  const SequenceSpec back = spec_from_json(j);
  EXPECT_EQ(spec_to_json(back).dump(), j.dump());
  EXPECT_EQ(back.levels, s.levels);
  EXPECT_EQ(*back.lambda, *s.lambda);
  EXPECT_EQ(back.gauge_tail, s.gauge_tail);
  EXPECT_EQ(back.e_tail, s.e_tail);
}

TEST(SequenceJson, RoundTripPreservesValues) {
  SequenceSpec s;
  s.p = 2;
  s.levels = {LevelSpec{1, 1}, LevelSpec{2, 1}, LevelSpec{2, 2}, LevelSpec{4, 2}};
  s.truncation = 3;
  s.precision = 64;
  s.seed = 1;
  const StackedSequence seq = build_prescribed(s);
  const Json j = sequence_to_json(seq);
  const StackedSequence back = sequence_from_json(parse_json_text(j.dump(2)));
  EXPECT_EQ(sequence_to_json(back).dump(), j.dump());
  ASSERT_EQ(back.terms.size(), seq.terms.size());
  for (std::size_t n = 0; n < seq.terms.size(); ++n) EXPECT_EQ(back.terms[n], seq.terms[n]);
  EXPECT_EQ(back.gauge, seq.gauge);
  EXPECT_TRUE(verify_stacked(back).ok());
  const RationalFunction phi = RationalFunction::parse("X^3 + 2*X + 1 / X + 3", Integer(2));
  EXPECT_EQ(valuate(ValuationHandle::over_sequence(back), phi), valuate(ValuationHandle::over_sequence(seq), phi));
}

TEST(SequenceJson, RawTermsAndInconsistentLengths) {
  const Json raw = parse_json_text(R"({"tower": {"prime": 2, "precision": 40, "steps": [
      {"kind": "eisenstein", "degree": 2, "poly": "X^2 - 2"}]}, "terms": ["0", "g1"]})");
  const StackedSequence seq = sequence_from_json(raw);
  EXPECT_EQ(seq.terms.size(), 2u);
  EXPECT_FALSE(seq.spec.has_value());

  SequenceSpec s;
  s.p = 3;
  s.levels = {LevelSpec{1, 1}, LevelSpec{2, 1}};
  s.truncation = 1;
  Json j = sequence_to_json(build_prescribed(s));
  j["gauge"].push_back("5");
  try {
    sequence_from_json(j);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::parse_error);
  }
}

TEST(ConfigJson, RoundTrip) {
  TowerField t = make_default_eisenstein_step(TowerField::base(2, 24), 2);
  SequenceSpec s;
  s.p = 3;
  s.levels = {LevelSpec{1, 1}, LevelSpec{2, 1}, LevelSpec{2, 2}};
  s.truncation = 2;
  s.e_tail = RamificationTail::stationary;
  IntConfig cfg;
  cfg.primes.push_back(PrimeEntry{Integer(2), {ElementSpec{"a", AlgebraicTranscendental{t.uniformizer(), true}}}, false});
  cfg.primes.push_back(PrimeEntry{Integer(3), {ElementSpec{"s", SequenceBacked{s, 2}}}, true});
  const Json j = config_to_json(cfg);
  const IntConfig back = config_from_json(parse_json_text(j.dump()));
  EXPECT_EQ(config_to_json(back).dump(), j.dump());
  EXPECT_EQ(class_group(back).str(), class_group(cfg).str());
  EXPECT_EQ(class_group(back).str(), "Z/2Z (+) Z/2Z");
}

TEST(JsonText, SyntaxErrorPosition) {
  try {
    parse_json_text("{\n  \"prime\": 2,\n  \"levels\": [1, ]\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 17u);
  }
}

TEST(JsonText, MissingFieldNamesPath) {
  try {
    spec_from_json(parse_json_text(R"({"prime": 2, "levels": [[1, 1], [2, 1]], "truncation": "x"})"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::parse_error);
    EXPECT_NE(std::string(e.what()).find("/truncation"), std::string::npos);
  }
}

}  // namespace
}  // namespace padicval
