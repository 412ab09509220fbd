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

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "padicval/expr.hpp"
#include "padicval/intval.hpp"
#include "padicval/stacked.hpp"
#include "padicval/tower.hpp"

namespace padicval {

using Json = nlohmann::ordered_json;

namespace io {

/// Integers that fit in int64 are JSON numbers, larger ones decimal strings.
inline Json integer(const Integer& n) {
  if (mpz_fits_slong_p(n.get_mpz_t())) return Json(static_cast<std::int64_t>(n.get_si()));
  return Json(n.get_str());
}

inline Json rational(const Rat& q) { return Json(q.str()); }

inline Json ext_value(const ExtVal& v) { return Json(v.str()); }

[[noreturn]] inline void bad(const std::string& path, const std::string& what) {
  fail(ErrorCode::parse_error, "at " + (path.empty() ? std::string("/") : path) + ": " + what);
}

inline const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(path, "missing field '" + key + "'");
  return *it;
}

inline Integer to_integer(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
  if (j.is_string()) {
    try {
      return parse_integer(j.get<std::string>());
    } catch (const Error&) {
      bad(path, "malformed integer");
    }
  }
  bad(path, "expected an integer");
}

inline long to_long(const Json& j, const std::string& path) {
  Integer n = to_integer(j, path);
  if (!mpz_fits_slong_p(n.get_mpz_t())) bad(path, "integer out of range");
  return n.get_si();
}

inline Rat to_rational(const Json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return Rat::parse(j.get<std::string>());
    } catch (const Error&) {
      bad(path, "malformed rational");
    }
  }
  return Rat(to_integer(j, path));
}

inline ExtVal to_ext_value(const Json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return ExtVal::parse(j.get<std::string>());
    } catch (const Error&) {
      bad(path, "malformed value");
    }
  }
  return ExtVal(to_rational(j, path));
}

inline const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array");
  return j;
}

}  // namespace io

/// JSON text with syntax errors mapped to line and column.
inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    auto pos = what.find("syntax error");
    throw ParseError(pos == std::string::npos ? what : what.substr(pos), line, col);
  }
}

// ---- towers and elements

inline Json tower_to_json(const TowerField& t) {
  Json j;
  j["prime"] = io::integer(t.p());
  j["precision"] = t.precision();
  Json steps = Json::array();
  for (const TowerStep& s : t.steps()) {
    Json js;
    js["kind"] = step_kind_name(s.kind);
    js["degree"] = s.degree();
    Json poly = Json::array();
    for (const auto& c : s.coeffs) {
      Json row = Json::array();
      for (const Integer& x : c) row.push_back(io::integer(x));
      poly.push_back(row);
    }
    js["poly"] = poly;
    steps.push_back(js);
  }
  j["steps"] = steps;
  return j;
}

namespace detail {

/// Monic defining polynomial in X over the prefix tower (generators g1, g2, ..., and p).
inline std::vector<std::vector<Integer>> step_poly_from_text(const TowerField& base, const std::string& text,
                                                             const std::string& path) {
  using P = Poly<TowerElement>;
  ExprContext<P> ctx;
  ctx.number = [&](const Rat& q) { return P::constant(base.from_rational(q)); };
  ctx.symbol = [&](const std::string& name) -> std::optional<P> {
    if (name == "X") return P::monomial(base.one(), 1);
    if (name == "p") return P::constant(base.from_integer(base.p()));
    if (name.size() > 1 && name[0] == 'g') {
      std::size_t k = 0;
      for (std::size_t i = 1; i < name.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
        k = k * 10 + static_cast<std::size_t>(name[i] - '0');
        if (k > base.num_steps()) return std::nullopt;
      }
      if (k >= 1) return P::constant(base.generator(k));
    }
    return std::nullopt;
  };
  P f = parse_expression(text, ctx);
  if (f.degree() < 1) io::bad(path, "defining polynomial must have positive degree");
  if (!(f.leading() == base.one())) io::bad(path, "defining polynomial must be monic");
  std::vector<std::vector<Integer>> rows;
  for (int k = 0; k < f.degree(); ++k) {
    std::vector<Integer> row;
    for (const Integer& c : f[static_cast<std::size_t>(k)].coords()) row.push_back(symmetric_mod(c, base.modulus()));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

inline TowerField tower_from_json(const Json& j, std::optional<unsigned> precision = std::nullopt,
                                  const std::string& path = "") {
  const Integer p = io::to_integer(io::field(j, "prime", path), path + "/prime");
  unsigned prec = precision ? *precision
                            : static_cast<unsigned>(io::to_long(io::field(j, "precision", path), path + "/precision"));
  std::vector<TowerStep> steps;
  const Json& js = io::array(io::field(j, "steps", path), path + "/steps");
  for (std::size_t i = 0; i < js.size(); ++i) {
    const std::string sp = path + "/steps/" + std::to_string(i);
    TowerStep s;
    const Json& kind = io::field(js[i], "kind", sp);
    if (kind == "unramified") s.kind = TowerStep::Kind::unramified;
    else if (kind == "eisenstein") s.kind = TowerStep::Kind::eisenstein;
    else io::bad(sp + "/kind", "expected 'unramified' or 'eisenstein'");
    const Json& pj = io::field(js[i], "poly", sp);
    if (pj.is_string()) {
      s.coeffs = detail::step_poly_from_text(tower_from_steps(p, prec, steps), pj.get<std::string>(), sp + "/poly");
      if (js[i].contains("degree") &&
          io::to_long(js[i]["degree"], sp + "/degree") != static_cast<long>(s.degree()))
        io::bad(sp + "/degree", "does not match the polynomial degree");
      steps.push_back(std::move(s));
      continue;
    }
    const Json& poly = io::array(pj, sp + "/poly");
    for (std::size_t k = 0; k < poly.size(); ++k) {
      std::vector<Integer> row;
      const Json& r = io::array(poly[k], sp + "/poly/" + std::to_string(k));
      for (std::size_t m = 0; m < r.size(); ++m)
        row.push_back(io::to_integer(r[m], sp + "/poly/" + std::to_string(k) + "/" + std::to_string(m)));
      s.coeffs.push_back(std::move(row));
    }
    if (js[i].contains("degree") &&
        io::to_long(js[i]["degree"], sp + "/degree") != static_cast<long>(s.degree()))
      io::bad(sp + "/degree", "does not match the number of coefficients");
    steps.push_back(std::move(s));
  }
  return tower_from_steps(p, prec, steps);
}

inline Json coords_to_json(const TowerElement& x) {
  Json c = Json::array();
  for (const Integer& v : x.coords()) c.push_back(io::integer(symmetric_mod(v, x.field().modulus())));
  return c;
}

inline TowerElement coords_from_json(const TowerField& t, const Json& j, const std::string& path) {
  io::array(j, path);
  if (j.size() != t.degree())
    io::bad(path, "expected " + std::to_string(t.degree()) + " coordinates, got " + std::to_string(j.size()));
  std::vector<Integer> c;
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(io::to_integer(j[i], path + "/" + std::to_string(i)));
  return t.element(std::move(c));
}

/// Element written over a tower with g1, g2, ... for the step generators and
/// p for the prime, e.g. "g1 + 3*g2^2".
inline TowerElement parse_element(const TowerField& t, std::string_view text, std::size_t line = 1) {
  ExprContext<TowerElement> ctx;
  ctx.number = [&](const Rat& q) { return t.from_rational(q); };
  ctx.symbol = [&](const std::string& name) -> std::optional<TowerElement> {
    if (name == "p") return t.from_integer(t.p());
    if (name.size() > 1 && name[0] == 'g') {
      std::size_t k = 0;
      for (std::size_t i = 1; i < name.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
        k = k * 10 + static_cast<std::size_t>(name[i] - '0');
        if (k > t.num_steps()) return std::nullopt;
      }
      if (k >= 1) return t.generator(k);
    }
    return std::nullopt;
  };
  return parse_expression(text, ctx, line);
}

/// {"coords": [...]} or {"expr": "..."} over the given tower.
inline TowerElement element_from_json(const TowerField& t, const Json& j, const std::string& path) {
  if (j.is_string()) return parse_element(t, j.get<std::string>());
  if (j.contains("coords")) return coords_from_json(t, j["coords"], path + "/coords");
  if (j.contains("expr")) {
    if (!j["expr"].is_string()) io::bad(path + "/expr", "expected a string");
    return parse_element(t, j["expr"].get<std::string>());
  }
  io::bad(path, "element needs 'coords' or 'expr'");
}

// ---- sequence specs and sequences

inline Json spec_to_json(const SequenceSpec& s) {
  Json j;
  j["prime"] = io::integer(s.p);
  Json levels = Json::array();
  for (const LevelSpec& l : s.levels) levels.push_back(Json::array({l.f, l.e}));
  j["levels"] = levels;
  if (s.lambda) {
    Json lam = Json::array();
    for (const Rat& q : *s.lambda) lam.push_back(io::rational(q));
    j["lambda"] = lam;
  }
  j["truncation"] = s.truncation;
  j["precision"] = s.precision;
  j["seed"] = s.seed;
  Json tail;
  tail["e"] = tail_name(s.e_tail);
  switch (s.gauge_tail.kind) {
    case GaugeTail::Kind::undeclared: tail["gauge"] = "undeclared"; break;
    case GaugeTail::Kind::unbounded: tail["gauge"] = "unbounded"; break;
    case GaugeTail::Kind::bounded: tail["gauge"] = Json{{"bounded", io::rational(s.gauge_tail.sup)}}; break;
  }
  j["tail"] = tail;
  return j;
}

inline SequenceSpec spec_from_json(const Json& j, const std::string& path = "") {
  SequenceSpec s;
  s.p = io::to_integer(io::field(j, "prime", path), path + "/prime");
  s.levels.clear();
  const Json& levels = io::array(io::field(j, "levels", path), path + "/levels");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const std::string lp = path + "/levels/" + std::to_string(i);
    const Json& l = io::array(levels[i], lp);
    if (l.size() != 2) io::bad(lp, "expected [f, e]");
    s.levels.push_back({io::to_long(l[0], lp + "/0"), io::to_long(l[1], lp + "/1")});
  }
  if (j.contains("lambda") && !j["lambda"].is_null()) {
    std::vector<Rat> lam;
    const Json& a = io::array(j["lambda"], path + "/lambda");
    for (std::size_t i = 0; i < a.size(); ++i)
      lam.push_back(io::to_rational(a[i], path + "/lambda/" + std::to_string(i)));
    s.lambda = lam;
  }
  s.truncation = j.contains("truncation") ? static_cast<std::size_t>(io::to_long(j["truncation"], path + "/truncation"))
                                          : s.levels.size() - 1;
  if (j.contains("precision")) s.precision = static_cast<unsigned>(io::to_long(j["precision"], path + "/precision"));
  if (j.contains("seed")) {
    Integer seed = io::to_integer(j["seed"], path + "/seed");
    if (seed < 0) io::bad(path + "/seed", "seed must be non-negative");
    s.seed = std::stoull(seed.get_str());
  }
  if (j.contains("tail")) {
    const Json& t = j["tail"];
    if (t.contains("e")) {
      const Json& e = t["e"];
      if (e == "stationary") s.e_tail = RamificationTail::stationary;
      else if (e == "unbounded") s.e_tail = RamificationTail::unbounded;
      else if (e == "undeclared") s.e_tail = RamificationTail::undeclared;
      else io::bad(path + "/tail/e", "expected stationary, unbounded or undeclared");
    }
    if (t.contains("gauge")) {
      const Json& g = t["gauge"];
      if (g == "unbounded") s.gauge_tail.kind = GaugeTail::Kind::unbounded;
      else if (g == "undeclared") s.gauge_tail.kind = GaugeTail::Kind::undeclared;
      else if (g.is_object() && g.contains("bounded")) {
        s.gauge_tail.kind = GaugeTail::Kind::bounded;
        s.gauge_tail.sup = io::to_rational(g["bounded"], path + "/tail/gauge/bounded");
      } else {
        io::bad(path + "/tail/gauge", "expected unbounded, undeclared or {\"bounded\": sup}");
      }
    }
  }
  s.validate();
  return s;
}

inline Json certificate_to_json(const PairCertificate& c) {
  Json j;
  j["verdict"] = verdict_name(c.verdict);
  j["method"] = c.method;
  j["witness"] = c.witness ? Json(*c.witness) : Json();
  if (!c.conditions.empty()) {
    Json conds = Json::array();
    for (const ConditionReport& r : c.conditions)
      conds.push_back(Json{{"name", r.name}, {"status", condition_status_name(r.status)}, {"detail", r.detail}});
    j["conditions"] = conds;
  }
  return j;
}

inline PairCertificate certificate_from_json(const Json& j, const std::string& path) {
  PairCertificate c;
  const Json& v = io::field(j, "verdict", path);
  if (v == "Certified") c.verdict = Verdict::certified;
  else if (v == "Refuted") c.verdict = Verdict::refuted;
  else if (v == "Unknown") c.verdict = Verdict::unknown;
  else io::bad(path + "/verdict", "unknown verdict");
  c.method = io::field(j, "method", path).get<std::string>();
  if (j.contains("witness") && j["witness"].is_string()) c.witness = j["witness"].get<std::string>();
  if (j.contains("conditions")) {
    for (const Json& r : j["conditions"]) {
      ConditionReport cr;
      cr.name = r.at("name").get<std::string>();
      const std::string st = r.at("status").get<std::string>();
      cr.status = st == "holds" ? ConditionStatus::holds
                                : st == "fails" ? ConditionStatus::fails : ConditionStatus::unknown;
      cr.detail = r.at("detail").get<std::string>();
      c.conditions.push_back(std::move(cr));
    }
  }
  return c;
}

inline Json sequence_to_json(const StackedSequence& seq) {
  Json j;
  j["spec"] = seq.spec ? spec_to_json(*seq.spec) : Json();
  j["tower"] = tower_to_json(seq.tower);
  Json terms = Json::array();
  for (const TowerElement& t : seq.terms) terms.push_back(coords_to_json(t));
  j["terms"] = terms;
  Json gauge = Json::array();
  for (const ExtVal& g : seq.gauge) gauge.push_back(io::ext_value(g));
  j["gauge"] = gauge;
  Json recs = Json::array();
  for (const LevelRecord& r : seq.records) {
    Json jr;
    jr["degree"] = r.degree;
    jr["e"] = r.e;
    jr["f"] = r.f;
    jr["steps"] = r.steps;
    jr["s"] = r.s ? coords_to_json(*r.s) : Json();
    jr["a_exponent"] = r.a_exponent ? Json(*r.a_exponent) : Json();
    jr["omega"] = r.omega ? io::ext_value(*r.omega) : Json();
    jr["certificate"] = r.certificate ? certificate_to_json(*r.certificate) : Json();
    recs.push_back(jr);
  }
  j["records"] = recs;
  return j;
}

/// A stored sequence, or a raw one given as {"tower", "terms"} only.
inline StackedSequence sequence_from_json(const Json& j, std::optional<unsigned> precision = std::nullopt,
                                          const std::string& path = "") {
  TowerField tower = tower_from_json(io::field(j, "tower", path), precision, path + "/tower");
  const Json& terms = io::array(io::field(j, "terms", path), path + "/terms");
  std::vector<TowerElement> ts;
  for (std::size_t i = 0; i < terms.size(); ++i)
    ts.push_back(element_from_json(tower, terms[i].is_array() ? Json{{"coords", terms[i]}} : terms[i],
                                   path + "/terms/" + std::to_string(i)));
  if (!j.contains("records")) {
    StackedSequence raw = sequence_from_terms(ts);
    if (j.contains("spec") && !j["spec"].is_null()) raw.spec = spec_from_json(j["spec"], path + "/spec");
    return raw;
  }
  StackedSequence seq;
  seq.tower = tower;
  seq.terms = std::move(ts);
  if (j.contains("spec") && !j["spec"].is_null()) seq.spec = spec_from_json(j["spec"], path + "/spec");
  const Json& gauge = io::array(io::field(j, "gauge", path), path + "/gauge");
  for (std::size_t i = 0; i < gauge.size(); ++i)
    seq.gauge.push_back(io::to_ext_value(gauge[i], path + "/gauge/" + std::to_string(i)));
  const Json& recs = io::array(j["records"], path + "/records");
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const std::string rp = path + "/records/" + std::to_string(i);
    const Json& jr = recs[i];
    LevelRecord r;
    r.degree = io::to_long(io::field(jr, "degree", rp), rp + "/degree");
    r.e = io::to_long(io::field(jr, "e", rp), rp + "/e");
    r.f = io::to_long(io::field(jr, "f", rp), rp + "/f");
    r.steps = static_cast<std::size_t>(io::to_long(io::field(jr, "steps", rp), rp + "/steps"));
    if (r.steps > tower.num_steps()) io::bad(rp + "/steps", "beyond the tower height");
    if (jr.contains("s") && !jr["s"].is_null()) r.s = coords_from_json(tower, jr["s"], rp + "/s");
    if (jr.contains("a_exponent") && !jr["a_exponent"].is_null())
      r.a_exponent = io::to_long(jr["a_exponent"], rp + "/a_exponent");
    if (jr.contains("omega") && !jr["omega"].is_null()) r.omega = io::to_ext_value(jr["omega"], rp + "/omega");
    if (jr.contains("certificate") && !jr["certificate"].is_null())
      r.certificate = certificate_from_json(jr["certificate"], rp + "/certificate");
    seq.records.push_back(std::move(r));
  }
  if (seq.records.size() != seq.terms.size() || seq.gauge.size() + 1 != seq.terms.size())
    io::bad(path, "terms, gauge and records have inconsistent lengths");
  return seq;
}

// ---- integer-valued polynomial configurations

inline Json element_spec_to_json(const ElementSpec& x) {
  Json j;
  j["label"] = x.label;
  if (x.is_sequence()) {
    j["sequence"] = spec_to_json(x.sequence().spec);
    if (x.sequence().declared_e) j["e"] = *x.sequence().declared_e;
  } else {
    j["point"] = Json{{"tower", tower_to_json(x.point().x.field())}, {"coords", coords_to_json(x.point().x)}};
    j["transcendental_over_q"] = x.point().transcendental_over_q;
  }
  return j;
}

inline ElementSpec element_spec_from_json(const Json& j, std::optional<unsigned> precision, const std::string& path) {
  ElementSpec x;
  x.label = j.contains("label") ? j["label"].get<std::string>() : path;
  if (j.contains("sequence")) {
    SequenceBacked s;
    s.spec = spec_from_json(j["sequence"], path + "/sequence");
    if (precision) s.spec.precision = *precision;
    if (j.contains("e")) s.declared_e = io::to_long(j["e"], path + "/e");
    x.body = s;
    return x;
  }
  if (j.contains("point")) {
    const Json& pt = j["point"];
    TowerField t = tower_from_json(io::field(pt, "tower", path + "/point"), precision, path + "/point/tower");
    AlgebraicTranscendental a{element_from_json(t, pt, path + "/point"), true};
    if (j.contains("transcendental_over_q")) a.transcendental_over_q = j["transcendental_over_q"].get<bool>();
    x.body = a;
    return x;
  }
  io::bad(path, "element needs 'sequence' or 'point'");
}

inline Json config_to_json(const IntConfig& cfg) {
  Json primes = Json::array();
  for (const PrimeEntry& pe : cfg.primes) {
    Json jp;
    jp["prime"] = io::integer(pe.p);
    jp["declared_nonconjugate"] = pe.declared_nonconjugate;
    Json els = Json::array();
    for (const ElementSpec& x : pe.elements) els.push_back(element_spec_to_json(x));
    jp["elements"] = els;
    primes.push_back(jp);
  }
  return Json{{"primes", primes}};
}

inline IntConfig config_from_json(const Json& j, std::optional<unsigned> precision = std::nullopt) {
  IntConfig cfg;
  const Json& primes = io::array(io::field(j, "primes", ""), "/primes");
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const std::string pp = "/primes/" + std::to_string(i);
    PrimeEntry pe;
    pe.p = io::to_integer(io::field(primes[i], "prime", pp), pp + "/prime");
    if (primes[i].contains("declared_nonconjugate"))
      pe.declared_nonconjugate = primes[i]["declared_nonconjugate"].get<bool>();
    const Json& els = io::array(io::field(primes[i], "elements", pp), pp + "/elements");
    for (std::size_t k = 0; k < els.size(); ++k)
      pe.elements.push_back(element_spec_from_json(els[k], precision, pp + "/elements/" + std::to_string(k)));
    cfg.primes.push_back(std::move(pe));
  }
  cfg.validate();
  return cfg;
}

}  // namespace padicval
