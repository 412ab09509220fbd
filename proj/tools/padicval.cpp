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

// padicval command-line front end.

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "padicval.hpp"

namespace pv = padicval;
using pv::Json;

namespace {

struct Options {
  std::optional<unsigned> precision;
  std::optional<std::uint64_t> seed;
  std::string output;
};

/// What a command resolved and produced.
struct Run {
  std::string command;
  std::vector<std::string> digest_parts;
  std::string prime = "-";
  unsigned precision = 64;
  std::uint64_t seed = 0;
  std::vector<std::string> lines;
  Json record = Json::object();
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) pv::fail(pv::ErrorCode::invalid_argument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256_hex(const std::vector<std::string>& parts) {
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  for (const std::string& s : parts) {
    const std::string len = std::to_string(s.size()) + ":";
    EVP_DigestUpdate(ctx, len.data(), len.size());
    EVP_DigestUpdate(ctx, s.data(), s.size());
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int n = 0;
  EVP_DigestFinal_ex(ctx, md, &n);
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < n; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

/// A JSON input file, registered in the digest.
Json load(Run& run, const std::string& path) {
  std::string text = read_file(path);
  run.digest_parts.push_back(text);
  return pv::parse_json_text(text);
}

std::string list(const std::vector<pv::Rat>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + "}";
}

Json rat_array(const std::vector<pv::Rat>& v) {
  Json a = Json::array();
  for (const pv::Rat& q : v) a.push_back(q.str());
  return a;
}

void resolve_tower(Run& run, const pv::TowerField& t) {
  run.prime = t.p().get_str();
  run.precision = t.precision();
}

void resolve_spec(Run& run, pv::SequenceSpec& s, const Options& o) {
  if (o.precision) s.precision = *o.precision;
  if (o.seed) s.seed = *o.seed;
  run.prime = s.p.get_str();
  run.precision = s.precision;
  run.seed = s.seed;
}

/// A sequence from a stored sequence file, or built from a spec file.
pv::StackedSequence load_sequence(Run& run, const std::string& path, const Options& o) {
  Json j = load(run, path);
  if (j.contains("levels")) {
    pv::SequenceSpec s = pv::spec_from_json(j);
    resolve_spec(run, s, o);
    return pv::build_prescribed(s);
  }
  pv::StackedSequence seq = pv::sequence_from_json(j, o.precision);
  resolve_tower(run, seq.tower);
  if (seq.spec) run.seed = seq.spec->seed;
  return seq;
}

/// A valuation handle: a point file ({"tower", "coords"|"expr"}), a sequence
/// file or a spec file.
pv::ValuationHandle load_handle(Run& run, const std::string& path, const Options& o) {
  Json j = load(run, path);
  if (j.contains("tower") && !j.contains("terms")) {
    pv::TowerField t = pv::tower_from_json(j["tower"], o.precision, "/tower");
    resolve_tower(run, t);
    bool transcendental = j.value("transcendental_over_q", true);
    return pv::ValuationHandle::over_point(pv::element_from_json(t, j, ""), transcendental);
  }
  run.digest_parts.pop_back();
  return pv::ValuationHandle::over_sequence(load_sequence(run, path, o));
}

pv::TowerField load_tower(Run& run, const std::string& path, const Options& o) {
  Json j = load(run, path);
  pv::TowerField t = pv::tower_from_json(j.contains("tower") ? j["tower"] : j, o.precision);
  resolve_tower(run, t);
  return t;
}

pv::IntConfig load_config(Run& run, const std::string& path, const Options& o) {
  Json j = load(run, path);
  pv::IntConfig cfg = pv::config_from_json(j, o.precision);
  std::string primes;
  for (const pv::PrimeEntry& pe : cfg.primes) primes += (primes.empty() ? "" : ",") + pe.p.get_str();
  run.prime = primes.empty() ? "-" : primes;
  if (o.precision) run.precision = *o.precision;
  if (o.seed) run.seed = *o.seed;
  return cfg;
}

// ---- commands

void cmd_build(Run& run, const std::string& spec_path, const std::string& save, const Options& o) {
  Json j = load(run, spec_path);
  pv::SequenceSpec s = pv::spec_from_json(j);
  resolve_spec(run, s, o);
  pv::StackedSequence seq = pv::build_prescribed(s);
  pv::StackedReport rep = pv::verify_stacked(seq);
  Json seq_json = pv::sequence_to_json(seq);
  if (!save.empty()) {
    std::ofstream out(save, std::ios::binary);
    if (!out) pv::fail(pv::ErrorCode::invalid_argument, "cannot write " + save);
    out << seq_json.dump(2) << "\n";
  }
  run.lines.push_back("tower: " + seq.tower.describe());
  std::string degrees, gauge, as;
  for (const pv::LevelRecord& r : seq.records) degrees += (degrees.empty() ? "" : ",") + std::to_string(r.degree);
  for (const pv::ExtVal& g : seq.gauge) gauge += (gauge.empty() ? "" : ",") + g.str();
  for (const pv::LevelRecord& r : seq.records)
    if (r.a_exponent) as += (as.empty() ? "" : ",") + std::to_string(*r.a_exponent);
  run.lines.push_back("degrees: " + degrees);
  run.lines.push_back("gauge: " + gauge);
  run.lines.push_back("a exponents: " + as);
  for (const pv::CheckResult& c : rep.checks)
    run.lines.push_back("check " + c.name + ": " + (c.passed ? "pass" : "FAIL") + (c.detail.empty() ? "" : " (" + c.detail + ")"));
  run.lines.push_back(std::string("verified: ") + (rep.ok() ? "yes" : "no"));
  run.record["sequence"] = seq_json;
  run.record["verified"] = rep.ok();
  if (!rep.ok()) pv::fail(pv::ErrorCode::contract_violation, "built sequence failed verification");
}

Json checks_json(const pv::StackedReport& rep) {
  Json a = Json::array();
  for (const pv::CheckResult& c : rep.checks) a.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return a;
}

void cmd_verify(Run& run, const std::string& path, const Options& o) {
  pv::StackedSequence seq = load_sequence(run, path, o);
  pv::StackedReport rep = pv::verify_stacked(seq);
  for (const pv::CheckResult& c : rep.checks)
    run.lines.push_back("check " + c.name + ": " + (c.passed ? "pass" : "FAIL") + (c.detail.empty() ? "" : " (" + c.detail + ")"));
  run.lines.push_back(std::string("stacked: ") + (rep.ok() ? "yes" : "no"));
  run.record["checks"] = checks_json(rep);
  run.record["stacked"] = rep.ok();
}

void cmd_valuate(Run& run, const std::string& path, const std::string& phi_text, const Options& o) {
  pv::ValuationHandle h = load_handle(run, path, o);
  run.digest_parts.push_back(phi_text);
  pv::RationalFunction phi = pv::RationalFunction::parse(phi_text, h.p());
  pv::ValuationResult r = pv::valuate_detailed(h, phi);
  run.lines.push_back("phi: " + phi.str());
  run.lines.push_back("value: " + r.value.str());
  run.record["phi"] = phi.str();
  run.record["value"] = r.value.str();
  if (h.is_sequence()) {
    std::string re;
    for (std::size_t m : r.rechecked) re += (re.empty() ? "" : ",") + std::to_string(m);
    run.lines.push_back("level: " + std::to_string(r.level) + " (re-checked at " + (re.empty() ? "none" : re) + ")");
    run.record["level"] = r.level;
    run.record["rechecked"] = r.rechecked;
  }
}

void cmd_residue(Run& run, const std::string& path, const std::string& phi_text, const Options& o) {
  pv::ValuationHandle h = load_handle(run, path, o);
  run.digest_parts.push_back(phi_text);
  pv::RationalFunction phi = pv::RationalFunction::parse(phi_text, h.p());
  pv::ResidueResult r = pv::residue_of_detailed(h, phi);
  run.lines.push_back("phi: " + phi.str());
  run.lines.push_back("residue: " + r.value.str() + " in F_" + run.prime + "^" + std::to_string(r.value.field().degree()));
  run.record["phi"] = phi.str();
  run.record["residue"] = pv::coords_to_json(r.value);
  run.record["residue_degree"] = r.value.field().degree();
  if (h.is_sequence()) run.record["level"] = r.level;
}

void cmd_omega(Run& run, const std::string& path, const std::string& x_text, const Options& o) {
  pv::TowerField t = load_tower(run, path, o);
  run.digest_parts.push_back(x_text);
  pv::TowerElement x = pv::parse_element(t, x_text);
  pv::MinimalPolynomial m = pv::minimal_polynomial(x);
  pv::ConjugateDistances cd = pv::conjugate_distances(x);
  pv::ExtVal w = pv::omega(x);
  run.lines.push_back("minimal polynomial: " + m.str() + " (mod p^" + std::to_string(m.precision) + ")");
  run.lines.push_back("conjugate distances: " + list(cd.distances));
  run.lines.push_back("omega: " + w.str() + (cd.degree_one ? " (degree 1: no conjugates, empty-sup convention)" : ""));
  run.record["minimal_polynomial"] = m.str();
  run.record["minpoly_precision"] = m.precision;
  run.record["conjugate_distances"] = rat_array(cd.distances);
  run.record["omega"] = w.str();
  run.record["degree_one"] = cd.degree_one;
}

void cmd_newton(Run& run, const std::string& poly_text, const std::string& prime, const Options& o) {
  pv::Integer p = pv::parse_integer(prime);
  pv::require_prime(p);
  run.prime = p.get_str();
  if (o.precision) run.precision = *o.precision;
  run.digest_parts.push_back(prime);
  run.digest_parts.push_back(poly_text);
  pv::Poly<pv::Rat> f = pv::parse_rat_poly(poly_text, p);
  pv::NPolygon np = pv::newton_polygon(f, p);
  Json verts = Json::array(), segs = Json::array();
  std::string vs, ss;
  for (const pv::NVertex& v : np.vertices) {
    verts.push_back(Json::array({v.index, v.value.str()}));
    vs += (vs.empty() ? "" : " ") + ("(" + std::to_string(v.index) + ", " + v.value.str() + ")");
  }
  for (const pv::NSegment& s : np.segments) {
    segs.push_back(Json{{"slope", s.slope.str()}, {"length", s.length}});
    ss += (ss.empty() ? "" : " ") + ("[slope " + s.slope.str() + ", length " + std::to_string(s.length) + "]");
  }
  std::vector<pv::Rat> rv = pv::root_valuations(np);
  run.lines.push_back("f: " + pv::to_string(f));
  run.lines.push_back("vertices: " + (vs.empty() ? std::string("none") : vs));
  run.lines.push_back("segments: " + (ss.empty() ? std::string("none") : ss));
  run.lines.push_back("root valuations: " + list(rv));
  run.record["vertices"] = verts;
  run.record["segments"] = segs;
  run.record["root_valuations"] = rat_array(rv);
}

void cmd_certify(Run& run, const std::string& path, const std::string& x_text, const std::string& delta_text,
                 const std::string& candidate, const std::string& against, const Options& o) {
  pv::TowerField t = load_tower(run, path, o);
  run.digest_parts.push_back(x_text);
  run.digest_parts.push_back(delta_text);
  run.digest_parts.push_back(candidate);
  run.digest_parts.push_back(against);
  pv::TowerElement x = pv::parse_element(t, x_text);
  pv::Rat delta = pv::Rat::parse(delta_text);
  std::optional<pv::TowerElement> c;
  if (!candidate.empty()) c = pv::parse_element(t, candidate);
  pv::PairCertificate cert = pv::certify_minimal_pair(x, delta, c);
  run.lines.push_back("minimal pair: " + std::string(pv::verdict_name(cert.verdict)) +
                      (cert.method.empty() ? "" : " (" + cert.method + ")") +
                      (cert.witness ? ": " + *cert.witness : ""));
  run.record["minimal_pair"] = pv::certificate_to_json(cert);
  if (!against.empty()) {
    pv::TowerElement b = pv::parse_element(t, against);
    pv::PairCertificate d = pv::check_distinguished_necessary(b, x, c);
    run.lines.push_back("distinguished (b, x): " + std::string(pv::verdict_name(d.verdict)));
    for (const pv::ConditionReport& r : d.conditions)
      run.lines.push_back("  " + r.name + ": " + pv::condition_status_name(r.status) + " (" + r.detail + ")");
    run.record["distinguished"] = pv::certificate_to_json(d);
  }
}

void cmd_classify(Run& run, const std::string& path, const Options& o) {
  pv::StackedSequence seq = load_sequence(run, path, o);
  pv::Classification c = pv::classify(seq);
  pv::BreadthReport b = pv::breadth_report(seq);
  run.lines.push_back("classification: " + c.str());
  run.lines.push_back("breadth: " + b.str());
  run.record["classification"] = c.str();
  run.record["breadth"] = b.str();
}

void cmd_class_group(Run& run, const std::string& path, const Options& o) {
  pv::IntConfig cfg = load_config(run, path, o);
  pv::DedekindVerdict v = pv::classify_dedekind(cfg);
  run.lines.push_back("verdict: " + v.str());
  run.record["verdict"] = v.str();
  if (!v.dedekind) return;
  pv::ClassGroupDesc g = pv::class_group(cfg);
  Json sums = Json::array();
  for (const pv::ClassGroupSummand& s : g.summands) {
    run.lines.push_back("  p = " + s.p.get_str() + ": Z/" + std::to_string(s.torsion) + "Z (+) Z^" + std::to_string(s.free_rank));
    sums.push_back(Json{{"prime", pv::io::integer(s.p)}, {"torsion", s.torsion}, {"free_rank", s.free_rank}});
  }
  run.lines.push_back("class group: " + g.str());
  run.record["summands"] = sums;
  run.record["class_group"] = g.str();
}

void cmd_pid(Run& run, const std::string& path, const Options& o) {
  pv::IntConfig cfg = load_config(run, path, o);
  pv::DedekindVerdict v = pv::classify_dedekind(cfg);
  run.lines.push_back("verdict: " + v.str());
  run.record["verdict"] = v.str();
  if (!v.dedekind) return;
  const bool pid = pv::is_pid(cfg);
  run.lines.push_back(std::string("pid: ") + (pid ? "yes" : "no"));
  run.record["pid"] = pid;
}

void cmd_witness(Run& run, const std::string& path, const std::string& g_text, const Options& o) {
  pv::IntConfig cfg = load_config(run, path, o);
  run.digest_parts.push_back(g_text);
  pv::Poly<pv::Rat> gq = pv::parse_rat_poly(g_text);
  std::vector<pv::Integer> gc;
  for (const pv::Rat& c : gq.coeffs()) {
    if (!c.is_integer()) pv::fail(pv::ErrorCode::invalid_argument, "g must have integer coefficients");
    gc.push_back(c.num());
  }
  pv::FactorizabilityWitness w = pv::factorizability_witness(cfg, pv::Poly<pv::Integer>(gc));
  for (const auto& [p, v] : w.values) run.lines.push_back("v_" + p.get_str() + "(g(alpha)) = " + v.str());
  run.lines.push_back("witness: " + w.str());
  run.record["found"] = w.found;
  if (w.found) {
    run.record["n"] = pv::io::integer(w.n);
    run.record["d"] = pv::io::integer(w.d);
  } else {
    run.record["reason"] = w.reason;
  }
}

void cmd_enumerate(Run& run, const std::string& prime, unsigned degree, const Options& o) {
  pv::Integer p = pv::parse_integer(prime);
  run.prime = p.get_str();
  run.digest_parts.push_back(prime);
  run.digest_parts.push_back(std::to_string(degree));
  const unsigned prec = o.precision.value_or(24);
  run.precision = prec;
  std::vector<pv::TowerField> exts = pv::enumerate_small_extensions(p, degree, prec);
  Json a = Json::array();
  for (const pv::TowerField& t : exts) {
    const pv::TowerStep& s = t.step(0);
    pv::Poly<pv::Rat> g;
    {
      std::vector<pv::Rat> c;
      for (const auto& v : s.coeffs) c.emplace_back(pv::symmetric_mod(v[0], t.modulus()));
      c.emplace_back(1);
      g = pv::Poly<pv::Rat>(c);
    }
    run.lines.push_back("(e, f) = (" + std::to_string(t.e()) + ", " + std::to_string(t.f()) + "): " + pv::to_string(g));
    a.push_back(Json{{"e", t.e()}, {"f", t.f()}, {"poly", pv::to_string(g)}, {"tower", pv::tower_to_json(t)}});
  }
  run.lines.push_back("count: " + std::to_string(exts.size()));
  run.record["extensions"] = a;
  run.record["count"] = exts.size();
}

std::string render(const Run& run) {
  std::ostringstream out;
  out << "padicval " << pv::kVersion << "\n";
  out << "command: " << run.command << "\n";
  out << "prime: " << run.prime << "\n";
  out << "precision: " << run.precision << "\n";
  out << "seed: " << run.seed << "\n";
  out << "input-digest: sha256:" << sha256_hex(run.digest_parts) << "\n";
  for (const std::string& l : run.lines) out << l << "\n";
  Json rec = Json::object();
  rec["command"] = run.command;
  for (auto it = run.record.begin(); it != run.record.end(); ++it) rec[it.key()] = it.value();
  out << "record: " << rec.dump() << "\n";
  return out.str();
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty() || output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(output, std::ios::binary);
  if (!out) pv::fail(pv::ErrorCode::invalid_argument, "cannot write " + output);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"padicval: p-adic towers, stacked sequences and valuation domains"};
  app.require_subcommand(1);
  Options opt;
  unsigned precision = 0;
  std::uint64_t seed = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--precision", precision, "absolute p-adic precision N")->check(CLI::Range(1u, 100000u));
    sub->add_option("--seed", seed, "seed for generator choices");
    sub->add_option("-o,--output", opt.output, "report file (default stdout)");
  };

  Run run;
  std::string in, arg1, arg2, save, candidate, against, prime;
  unsigned degree = 2;

  auto* build = app.add_subcommand("build", "build a stacked sequence from a spec and verify it");
  build->add_option("spec", in, "sequence spec (JSON)")->required();
  build->add_option("--save", save, "write the sequence file here");
  auto* verify = app.add_subcommand("verify", "re-verify a sequence (or a spec, after building)");
  verify->add_option("sequence", in)->required();
  auto* valuate = app.add_subcommand("valuate", "value of a rational function, e.g. \"X^2 - p / X + 1\"");
  valuate->add_option("source", in, "sequence, spec or point file")->required();
  valuate->add_option("phi", arg1, "rational function")->required();
  auto* residue = app.add_subcommand("residue", "residue of a value-zero rational function");
  residue->add_option("source", in)->required();
  residue->add_option("phi", arg1)->required();
  auto* omega = app.add_subcommand("omega", "conjugate distances and omega of a tower element");
  omega->add_option("tower", in, "tower file")->required();
  omega->add_option("element", arg1, "element over g1, g2, ..., p")->required();
  auto* newton = app.add_subcommand("newton", "Newton polygon of a polynomial over Q_p");
  newton->add_option("poly", arg1)->required();
  newton->add_option("--prime", prime)->required();
  auto* certify = app.add_subcommand("certify-pair", "certify a minimal pair (x, delta)");
  certify->add_option("tower", in)->required();
  certify->add_option("element", arg1)->required();
  certify->add_option("delta", arg2)->required();
  certify->add_option("--candidate", candidate, "lower-degree counterexample candidate");
  certify->add_option("--against", against, "check (b, x) as a distinguished pair");
  auto* classify = app.add_subcommand("classify", "DVR / non-discrete classification and breadth");
  classify->add_option("sequence", in)->required();
  auto* cg = app.add_subcommand("class-group", "class group of Int_Q(E, O)");
  cg->add_option("config", in)->required();
  auto* pid = app.add_subcommand("pid", "is Int_Q(E, O) a PID");
  pid->add_option("config", in)->required();
  auto* witness = app.add_subcommand("witness", "factorizability witness (n, d) for g");
  witness->add_option("config", in)->required();
  witness->add_option("g", arg1, "polynomial with integer coefficients")->required();
  auto* enumerate = app.add_subcommand("enumerate-exts", "extensions of Q_p of degree 2 or 3");
  enumerate->add_option("--prime", prime)->required();
  enumerate->add_option("--degree", degree)->required();

  for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; })) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  CLI::App* chosen = app.get_subcommands().front();
  run.command = chosen->get_name();
  if (chosen->count("--precision")) opt.precision = precision;
  if (chosen->count("--seed")) opt.seed = seed;
  if (opt.precision) run.precision = *opt.precision;
  if (opt.seed) run.seed = *opt.seed;

  int status = 0;
  try {
    if (chosen == build) cmd_build(run, in, save, opt);
    else if (chosen == verify) cmd_verify(run, in, opt);
    else if (chosen == valuate) cmd_valuate(run, in, arg1, opt);
    else if (chosen == residue) cmd_residue(run, in, arg1, opt);
    else if (chosen == omega) cmd_omega(run, in, arg1, opt);
    else if (chosen == newton) cmd_newton(run, arg1, prime, opt);
    else if (chosen == certify) cmd_certify(run, in, arg1, arg2, candidate, against, opt);
    else if (chosen == classify) cmd_classify(run, in, opt);
    else if (chosen == cg) cmd_class_group(run, in, opt);
    else if (chosen == pid) cmd_pid(run, in, opt);
    else if (chosen == witness) cmd_witness(run, in, arg1, opt);
    else if (chosen == enumerate) cmd_enumerate(run, prime, degree, opt);
  } catch (const pv::Error& e) {
    Json err{{"code", pv::error_code_name(e.code())}, {"message", e.what()}};
    if (const auto* pe = dynamic_cast<const pv::ParseError*>(&e)) {
      err["line"] = pe->line();
      err["column"] = pe->column();
    }
    if (const auto* pe = dynamic_cast<const pv::PrecisionError*>(&e)) {
      err["retry_precision"] = pe->retry_precision();
      run.lines.push_back("hint: retry with --precision " + std::to_string(pe->retry_precision()));
    }
    run.lines.push_back(std::string("error: ") + pv::error_code_name(e.code()) + ": " + e.what());
    run.record["error"] = err;
    status = e.code() == pv::ErrorCode::parse_error ? 3 : 1;
  }
  try {
    emit(render(run), opt.output);
  } catch (const pv::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return status;
}
