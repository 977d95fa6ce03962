// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "brdg/corpus.hpp"
#include "brdg/filters.hpp"
#include "brdg/frames.hpp"
#include "brdg/json_io.hpp"
#include "brdg/oracle.hpp"
#include "brdg/solver.hpp"
#include "brdg/tiling.hpp"

using namespace brdg;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void fail(const std::string& why) {
    pass = false;
    if (failures.size() < 10) failures.push_back(why);
  }
};

// Every witness emitted anywhere, with the size bound of its formula.
struct SizeRecord {
  std::string formula;
  int carrier;
  std::uint64_t bound;
};
std::vector<SizeRecord> g_sizes;

void record_size(const Formula& f, const SatWitness& w) {
  g_sizes.push_back({print_formula(f), w.structure.size(), formula_size(f)});
}

const PropertySet kP1(PropertySet::kCommutative);
const PropertySet kP2(PropertySet::kDecreasing);
const PropertySet kP3(PropertySet::kSquareIncreasing);
const PropertySet kP4(PropertySet::kUnital);

// Completion of the witness is a class member, mu embeds, and the formula
// holds (or fails, for countermodels) under the transported valuation.
bool verify_witness(const Formula& f, const SatWitness& w, bool want, std::string* why) {
  std::string reason;
  if (!check_certificate(w.structure, w.certificate, &reason)) {
    *why = "certificate: " + reason;
    return false;
  }
  const Completion c = completion(w.structure, w.certificate);
  const Signature& sig = f.signature();
  const MemberReport m = check_member(c.algebra, sig.cls, sig.props);
  if (!m.ok) {
    *why = "completion not a member: " + m.violation;
    return false;
  }
  const EmbeddingReport e = verify_embedding(w.structure, c);
  if (!e.ok) {
    *why = "mu is not an embedding";
    return false;
  }
  Valuation v;
  for (const auto& [name, x] : w.valuation) v[name] = c.mu[x];
  if (evaluate_formula(c.algebra, f, v) != want) {
    *why = want ? "formula false in the completion" : "sentence holds in the countermodel";
    return false;
  }
  return true;
}

// ---------------------------------------------------------------- 1

Outcome criterion_identities() {
  Outcome o;
  const Signature brdg = Signature::make(AlgebraClass::Brdg);
  const std::vector<std::string> valid = {
      "forall x, y, z: x * (y \\/ z) = (x * y) \\/ (x * z)",
      "forall x, y, z: (y \\/ z) * x = (y * x) \\/ (z * x)",
      "forall x, y: x * (x \\ y) <= y",
      "forall x, y: y <= x \\ (x * y)",
      "forall x, y, z: x <= ((x * y) \\/ z) / y",
      "forall x: 0 * x = 0 & x * 0 = 0",
      "forall x, y, z: (!(x * y <= z) | y <= x \\ z) & (!(y <= x \\ z) | x * y <= z)",
      "forall x, y, z: (!(x * y <= z) | x <= z / y) & (!(x <= z / y) | x * y <= z)",
      "forall x, y, z: x /\\ (y \\/ z) = (x /\\ y) \\/ (x /\\ z)",
  };
  const std::vector<std::string> refuted = {
      "forall x, y: x * y = y * x",
      "forall x, y: x * y <= x",
      "forall x: x <= x * x",
  };
  int ok = 0;
  for (const std::string& text : valid) {
    const UniversalSentence s = parse_universal(text, brdg);
    const ValidResult r = decide_valid(s);
    if (r.valid) ++ok;
    else o.fail("not valid: " + text);
  }
  for (const std::string& text : refuted) {
    const UniversalSentence s = parse_universal(text, brdg);
    const ValidResult r = decide_valid(s);
    std::string why;
    if (r.valid || !r.countermodel) {
      o.fail("no countermodel: " + text);
      continue;
    }
    record_size(negate_for_validity(s), *r.countermodel);
    if (!verify_witness(s.body, *r.countermodel, false, &why)) o.fail(text + ": " + why);
    else ++ok;
  }
  o.detail << ok << "/" << valid.size() + refuted.size() << " identities decided as expected";
  return o;
}

// ---------------------------------------------------------------- 2

Outcome criterion_properties() {
  Outcome o;
  const std::vector<std::pair<PropertySet, std::string>> laws = {
      {kP1, "forall x, y: x * y = y * x"},
      {kP2, "forall x, y: x * y <= x & x * y <= y"},
      {kP3, "forall x: x <= x * x"},
  };
  std::vector<Signature> classes;
  for (PropertySet q : {PropertySet{}, kP1, kP2, kP3}) classes.push_back(Signature::make(AlgebraClass::Brdg, q));
  classes.push_back(Signature::make(AlgebraClass::Brdge, kP4));
  int pairs = 0, ok = 0;
  for (const Signature& sig : classes)
    for (const auto& [law, text] : laws) {
      ++pairs;
      const UniversalSentence s = parse_universal(text, sig);
      const ValidResult r = decide_valid(s);
      const bool expect = law.subset_of(sig.props);
      const std::string tag = text + " in " + std::string(to_string(sig.cls)) + "{" + sig.props.to_string() + "}";
      if (r.valid != expect) {
        o.fail(tag + (expect ? " refuted" : " reported valid"));
        continue;
      }
      if (!r.valid) {
        std::string why;
        record_size(negate_for_validity(s), *r.countermodel);
        if (!verify_witness(s.body, *r.countermodel, false, &why)) {
          o.fail(tag + ": " + why);
          continue;
        }
      }
      ++ok;
    }
  const Signature unital = Signature::make(AlgebraClass::Brdge, kP4);
  ++pairs;
  if (decide_valid(parse_universal("forall x: e * x = x & x * e = x", unital)).valid) ++ok;
  else o.fail("unit law refuted in brdge");
  o.detail << ok << "/" << pairs << " class/law pairs (P1-P3 over Q in {none,P1,P2,P3,P4}, unit law in brdge)";
  return o;
}

// ---------------------------------------------------------------- 3, 7

struct CorpusEntry {
  Formula formula;
  bool sat = false;
  bool limited = false;
};

struct Corpus {
  std::vector<std::pair<Signature, std::vector<CorpusEntry>>> parts;
};

Corpus build_corpus() {
  Corpus c;
  struct Part {
    Signature sig;
    int count;
  };
  const std::vector<Part> plan = {
      {Signature::make(AlgebraClass::Bdo), 500},
      {Signature::make(AlgebraClass::Bdbo), 500},
      {Signature::make(AlgebraClass::Brdg), 500},
      {Signature::make(AlgebraClass::Brdge, kP4), 500},
      {Signature::make(AlgebraClass::Brdg, kP1), 150},
      {Signature::make(AlgebraClass::Brdg, kP2), 150},
      {Signature::make(AlgebraClass::Brdg, kP3), 150},
  };
  std::uint64_t seed = 20240601;
  for (const Part& p : plan) {
    std::mt19937_64 rng(seed++);
    std::vector<CorpusEntry> entries;
    for (int i = 0; i < p.count; ++i) entries.push_back({random_formula(p.sig, rng), false, false});
    c.parts.emplace_back(p.sig, std::move(entries));
  }
  return c;
}

Outcome criterion_oracle(Corpus& corpus, std::vector<PartialStructure>& small_witnesses) {
  Outcome o;
  std::size_t total = 0, sat = 0, verified = 0, oracle_sat = 0, limited = 0;

  // Oracle batches run concurrently with the solver pass.
  std::vector<std::future<std::vector<BruteForceResult>>> oracle;
  for (auto& [sig, entries] : corpus.parts) {
    std::vector<const Formula*> fs;
    for (const CorpusEntry& e : entries) fs.push_back(&e.formula);
    oracle.push_back(std::async(std::launch::async, [fs] { return brute_force_sat_batch(fs, 5); }));
  }

  for (auto& [sig, entries] : corpus.parts)
    for (CorpusEntry& e : entries) {
      ++total;
      SatResult r;
      try {
        r = decide_sat(e.formula);
      } catch (const SizeLimitError&) {
        e.limited = true;
        ++limited;
        continue;
      }
      e.sat = r.sat;
      if (!r.sat) continue;
      ++sat;
      record_size(e.formula, *r.witness);
      if (r.witness->structure.size() <= 4) small_witnesses.push_back(r.witness->structure);
      std::string why;
      try {
        if (verify_witness(e.formula, *r.witness, true, &why)) ++verified;
        else o.fail("(a) " + print_formula(e.formula) + ": " + why);
      } catch (const SizeLimitError& err) {
        o.fail("(a) " + print_formula(e.formula) + ": completion too large: " + err.what());
      }
    }

  std::size_t conflicts = 0;
  for (std::size_t k = 0; k < corpus.parts.size(); ++k) {
    const std::vector<BruteForceResult> res = oracle[k].get();
    const auto& entries = corpus.parts[k].second;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (!res[i]) continue;
      ++oracle_sat;
      if (!entries[i].sat && !entries[i].limited) {
        ++conflicts;
        o.fail("(b) UNSAT but the oracle has a model: " + print_formula(entries[i].formula));
      }
    }
  }

  std::size_t transfers = 0;
  const Signature brdg = Signature::make(AlgebraClass::Brdg);
  for (auto& [sig, entries] : corpus.parts) {
    if (sig.cls != AlgebraClass::Bdo) continue;
    for (const CorpusEntry& e : entries) {
      if (e.limited) continue;
      const Formula circ = diamond_to_circ(e.formula);
      const bool in_bdbo = decide_sat(circ).sat;
      const bool in_brdg = decide_sat(with_signature(circ, brdg)).sat;
      ++transfers;
      if (in_bdbo != e.sat || in_brdg != e.sat)
        o.fail("(c) transfer mismatch: " + print_formula(e.formula));
    }
  }
  if (limited) o.fail(std::to_string(limited) + " corpus formulas exceeded the subterm cap");

  o.detail << total << " formulas (" << corpus.parts.size() << " class/property parts, >= 500 per class); "
           << sat << " SAT, " << verified << " completions verified; oracle(<=5) found " << oracle_sat
           << " models, " << conflicts << " conflicts; " << transfers << " bdo->bdbo->brdg transfers";
  return o;
}

Outcome criterion_size_bound() {
  Outcome o;
  std::size_t over = 0;
  for (const SizeRecord& r : g_sizes)
    if (static_cast<std::uint64_t>(r.carrier) > r.bound) {
      ++over;
      o.fail(r.formula + ": carrier " + std::to_string(r.carrier) + " > " + std::to_string(r.bound));
    }
  if (g_sizes.empty()) o.fail("no witnesses recorded");
  o.detail << g_sizes.size() << " witnesses checked, " << over << " above s(phi)";
  return o;
}

// ---------------------------------------------------------------- 4

PartialStructure load_structure(const std::string& path) {
  std::ifstream in(path);
  return structure_from_json(Json::parse(in));
}

Outcome criterion_certifier(const std::vector<PartialStructure>& witnesses) {
  Outcome o;
  std::vector<PartialStructure> structures = witnesses;

  // Random restrictions of oracle algebras, some with one corrupted entry.
  std::mt19937_64 rng(4242);
  std::bernoulli_distribution keep(0.35), corrupt(0.3);
  for (AlgebraClass cls : {AlgebraClass::Bdo, AlgebraClass::Bdbo, AlgebraClass::Brdg, AlgebraClass::Brdge}) {
    const PropertySet q = cls == AlgebraClass::Brdge ? kP4 : PropertySet{};
    std::vector<FiniteAlgebra> algebras;
    enumerate_algebras(4, cls, q, [&](const FiniteAlgebra& a) {
      algebras.push_back(a);
      return true;
    });
    std::shuffle(algebras.begin(), algebras.end(), rng);
    if (algebras.size() > 250) algebras.resize(250);
    for (const FiniteAlgebra& a : algebras) {
      PartialStructure b = to_partial(a);
      const int n = b.size();
      for (BinOp op : {BinOp::Meet, BinOp::Join, BinOp::Prod, BinOp::Under, BinOp::Over}) {
        if (!b.signature().has_op(to_op(op))) continue;
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y)
            if (!keep(rng)) b.undefine(op, x, y);
      }
      if (b.signature().has_op(Op::Diamond))
        for (int x = 0; x < n; ++x)
          if (!keep(rng)) b.undefine_diamond(x);
      if (n > 1 && corrupt(rng)) {
        std::uniform_int_distribution<int> pick(0, n - 1);
        if (b.signature().has_op(Op::Diamond)) b.define_diamond(pick(rng), pick(rng));
        else b.define(BinOp::Prod, pick(rng), pick(rng), pick(rng));
      }
      structures.push_back(std::move(b));
    }
  }

  std::size_t certified = 0, refused = 0, orderings = 0;
  for (const PartialStructure& b : structures) {
    const CertifyResult r = certify(b);
    if (!r) {
      ++refused;
    } else {
      ++certified;
      std::string why;
      if (!check_certificate(b, *r.certificate, &why)) {
        o.fail("(a) certificate does not re-check: " + why);
        continue;
      }
      try {
        const Completion c = completion(b, *r.certificate);
        const MemberReport m = check_member(c.algebra, b.signature().cls, b.signature().props);
        if (!m.ok) o.fail("(a) completion not a member: " + m.violation);
        if (!verify_embedding(b, c).ok) o.fail("(a) mu is not an embedding");
      } catch (const SizeLimitError& e) {
        o.fail(std::string("(a) completion too large: ") + e.what());
      }
    }
    if (!validate_partial_lattice(b)) continue;
    const FilterSystem sys = certification_system(b);
    FilterFamily f0 = prime_filters(b, b.signature().props);
    const FilterFamily reference = refine(sys, f0);
    for (int k = 0; k < 100; ++k) {
      std::shuffle(f0.begin(), f0.end(), rng);
      ++orderings;
      if (refine(sys, f0) != reference) {
        o.fail("(c) refine depends on the order of F0");
        break;
      }
    }
  }

  const CertifyResult n5 = certify(load_structure("data/structures/n5.json"));
  const bool n5_ok = !n5 && n5.refusal->reason == "separation (D) fails: (c,a)";
  if (!n5_ok) o.fail("(b) N5 not refused with the expected reason");
  const CertifyResult uz = certify(load_structure("data/structures/under_zero.json"));
  const bool uz_ok = !uz && uz.refusal->reason == "filter elimination emptied F";
  if (!uz_ok) o.fail("(b) 1\\1 = 0 not refused with the expected reason");

  o.detail << structures.size() << " structures of size <= 4: " << certified << " certified (completions checked), "
           << refused << " refused; N5 -> \"" << (n5.refusal ? n5.refusal->reason : "certified") << "\"; 1\\1=0 -> \""
           << (uz.refusal ? uz.refusal->reason : "certified") << "\"; " << orderings << " shuffled refinements";
  return o;
}

// ---------------------------------------------------------------- 5

bool mem(const std::vector<Mask>& pf, int f, int x) { return has(pf[f], x); }

void check_duality(const FiniteAlgebra& a, AlgebraClass cls, Outcome& o) {
  const EmbeddingReport emb = verify_canonical_embedding(a);
  if (!emb.ok) o.fail(std::string(to_string(cls)) + ": mu is not an embedding");
  const std::vector<Mask> pf = algebra_prime_filters(a);
  const int k = static_cast<int>(pf.size());
  const int n = a.size;
  const Frame f = canonical_frame(a);

  if (cls == AlgebraClass::Bdo) {
    for (int F = 0; F < k; ++F)
      for (int x = 0; x < n; ++x) {
        if (!mem(pf, F, a.diamond[x])) continue;
        bool found = false;
        for (int G = 0; G < k && !found; ++G) found = mem(pf, G, x) && f.R(F, G);
        if (!found) o.fail("bdo: no diamond witness");
      }
    return;
  }

  if (cls != AlgebraClass::Bdbo) {
    const Frame u = canonical_frame(a, RelationVariant::Under);
    const Frame v = canonical_frame(a, RelationVariant::Over);
    if (u.rel != f.rel || v.rel != f.rel) o.fail(std::string(to_string(cls)) + ": relation definitions disagree");
  }

  for (int H = 0; H < k; ++H)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        if (!mem(pf, H, a.prod[x * n + y])) continue;
        bool found = false;
        for (int F = 0; F < k && !found; ++F)
          for (int G = 0; G < k && !found; ++G) found = mem(pf, F, x) && mem(pf, G, y) && f.R(F, G, H);
        if (!found) o.fail("no product witness");
      }
  if (cls == AlgebraClass::Bdbo) return;

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      for (int G = 0; G < k; ++G) {
        if (mem(pf, G, a.under[x * n + y])) continue;
        bool found = false;
        for (int F = 0; F < k && !found; ++F)
          for (int H = 0; H < k && !found; ++H) found = mem(pf, F, x) && !mem(pf, H, y) && f.R(F, G, H);
        if (!found) o.fail("no under witness");
      }
      for (int F = 0; F < k; ++F) {
        if (mem(pf, F, a.over[y * n + x])) continue;  // y / x
        bool found = false;
        for (int G = 0; G < k && !found; ++G)
          for (int H = 0; H < k && !found; ++H) found = mem(pf, G, x) && !mem(pf, H, y) && f.R(F, G, H);
        if (!found) o.fail("no over witness");
      }
    }

  if (cls == AlgebraClass::Brdge) {
    if (!check_frame(f, kP4)) o.fail("brdge: frame fails the unit condition");
    for (int F = 0; F < k; ++F) {
      bool right = false, left = false;
      for (int G = 0; G < k; ++G) {
        if (!mem(pf, G, a.unit)) continue;
        right = right || f.R(F, G, F);
        left = left || f.R(G, F, F);
      }
      if (!right || !left) o.fail("brdge: missing unit witness");
    }
  }
}

Outcome criterion_duality() {
  Outcome o;
  std::map<std::string, std::size_t> seen;
  std::size_t correspondences = 0;
  for (AlgebraClass cls : {AlgebraClass::Bdo, AlgebraClass::Bdbo, AlgebraClass::Brdg, AlgebraClass::Brdge}) {
    const PropertySet q = cls == AlgebraClass::Brdge ? kP4 : PropertySet{};
    enumerate_algebras(5, cls, q, [&](const FiniteAlgebra& a) {
      if (a.size == 1) return true;  // no prime filters
      ++seen[std::string(to_string(cls))];
      check_duality(a, cls, o);
      if (cls == AlgebraClass::Brdg) {
        const Frame f = canonical_frame(a);
        for (PropertySet p : {kP1, kP2, kP3}) {
          ++correspondences;
          if (is_member(a, cls, p) != static_cast<bool>(check_frame(f, p)))
            o.fail("P" + p.to_string() + " and its frame condition disagree");
        }
      }
      return true;
    });
  }
  o.detail << "algebras of size 2..5:";
  for (const auto& [name, count] : seen) o.detail << " " << name << "=" << count;
  o.detail << "; " << correspondences << " property/frame-condition comparisons (one-element algebras skipped)";
  return o;
}

// ---------------------------------------------------------------- 6

Outcome criterion_tiling() {
  Outcome o;
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator("data/tiling")) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  int eloise = 0, abelard = 0;
  for (const auto& path : files) {
    std::ifstream in(path);
    const TilingInstance t = tiling_from_json(Json::parse(in));
    const std::string name = path.stem().string();
    const ModalFormula phi = build_modal_formula(t);
    const Translation tr = translate(phi);
    const GameResult g = solve_game(t);
    char head[64];
    std::snprintf(head, sizeof head, "%-18s n=%d s=%d ", name.c_str(), t.n, t.s());
    char line[256];
    if (g == GameResult::EloiseWins) {
      ++eloise;
      const PointedModel sm = strategy_model(t);
      const bool k1 = kripke_check(sm.model, sm.root, phi);
      const ModelAlgebra ma = model_to_algebra(sm.model, tr);
      const bool alg = evaluate_formula(ma.algebra, tr.formula, ma.valuation);
      const PointedModel back = algebra_to_model(ma.algebra, ma.valuation, tr);
      const bool k2 = kripke_check(back.model, back.root, phi);
      std::snprintf(line, sizeof line, "%seloise: model %d worlds %s, algebra %s, filter model %s", head,
                    sm.model.worlds, k1 ? "ok" : "FAIL", alg ? "ok" : "FAIL", k2 ? "ok" : "FAIL");
      o.notes.push_back(line);
      if (!(k1 && alg && k2)) o.fail(name + ": constructive chain broken");
    } else {
      ++abelard;
      const BoundedSearchResult r = bounded_search(phi, 6);
      std::snprintf(line, sizeof line, "%sabelard: %s (bounded: <= 6 worlds, %llu nodes)", head,
                    r.model ? "MODEL FOUND" : "no model", static_cast<unsigned long long>(r.nodes));
      o.notes.push_back(line);
      if (r.model) o.fail(name + ": bounded search found a model");
    }
    if (t.n > 2 || t.s() > 1) o.fail(name + ": instance outside n <= 2, s <= 1");
  }
  if (eloise == 0 || abelard == 0 || eloise + abelard < 6) o.fail("instance mix too small");
  o.detail << eloise + abelard << " instances: " << eloise << " eloise (exact chain), " << abelard
           << " abelard (bounded check only)";
  return o;
}

// ---------------------------------------------------------------- 8

Outcome criterion_naive(const Corpus& corpus) {
  Outcome o;
  std::vector<Formula> small;
  std::set<std::string> seen;
  for (const auto& [sig, entries] : corpus.parts)
    for (const CorpusEntry& e : entries)
      if (formula_size(e.formula) <= 3 && seen.insert(print_formula(e.formula)).second) small.push_back(e.formula);
  const std::size_t from_main = small.size();
  std::mt19937_64 rng(777);
  for (AlgebraClass cls : {AlgebraClass::Bdo, AlgebraClass::Bdbo, AlgebraClass::Brdg, AlgebraClass::Brdge}) {
    const Signature sig = Signature::make(cls, cls == AlgebraClass::Brdge ? kP4 : PropertySet{});
    std::size_t added = 0;
    for (int i = 0; i < 200000 && added < 250; ++i) {
      CorpusOptions opt;
      opt.variables = 1 + i % 2;
      opt.max_depth = i % 3 == 0 ? 0 : 1;
      opt.max_atoms = 1 + i % 3;
      Formula f = random_formula(sig, rng, opt);
      if (formula_size(f) > 3) continue;
      if (!seen.insert(std::string(to_string(cls)) + ":" + print_formula(f)).second) continue;
      small.push_back(std::move(f));
      ++added;
    }
  }
  std::size_t agree = 0, sat = 0;
  for (const Formula& f : small) {
    const SatResult naive = decide_sat_naive(f);
    const SatResult fast = decide_sat(f);
    if (naive.sat == fast.sat) ++agree;
    else o.fail("disagreement: " + print_formula(f));
    sat += fast.sat;
    if (naive.witness) record_size(f, *naive.witness);
    if (fast.witness) record_size(f, *fast.witness);
  }
  o.detail << small.size() << " formulas with s(phi) <= 3 (" << from_main << " from the main corpus): " << agree
           << " agree, " << sat << " SAT";
  return o;
}

}  // namespace

int main() {
  struct Line {
    int id;
    const char* name;
    Outcome outcome;
    double seconds;
  };
  auto measure = [](int id, const char* name, auto&& body) {
    const auto t0 = Clock::now();
    Line line{id, name, {}, 0};
    try {
      line.outcome = body();
    } catch (const std::exception& e) {
      line.outcome.fail(std::string("exception: ") + e.what());
    }
    line.seconds = since(t0);
    return line;
  };
  bool all = true;
  auto print = [&](const Line& l) {
    const Outcome& o = l.outcome;
    all = all && o.pass;
    std::printf("criterion %d: %s  %s  [%s] (%.1fs)\n", l.id, o.pass ? "PASS" : "FAIL", l.name, o.detail.str().c_str(),
                l.seconds);
    for (const std::string& n : o.notes) std::printf("    %s\n", n.c_str());
    for (const std::string& f : o.failures) std::printf("    - %s\n", f.c_str());
    std::fflush(stdout);
  };

  Corpus corpus = build_corpus();
  std::vector<PartialStructure> witnesses;

  print(measure(1, "variety identities", criterion_identities));
  print(measure(2, "property-class separations", criterion_properties));
  print(measure(3, "oracle cross-validation", [&] { return criterion_oracle(corpus, witnesses); }));
  print(measure(4, "certifier soundness and refusal", [&] { return criterion_certifier(witnesses); }));
  print(measure(5, "duality round trips", criterion_duality));
  print(measure(6, "tiling end-to-end", criterion_tiling));
  // 8 runs first so its witnesses count towards 7.
  Line naive = measure(8, "naive enumeration agreement", [&] { return criterion_naive(corpus); });
  print(measure(7, "size-bound conformance", criterion_size_bound));
  print(naive);
  return all ? 0 : 1;
}
