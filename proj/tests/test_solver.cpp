#include "doctest.h"

#include "brdg/frames.hpp"
#include "brdg/solver.hpp"
#include "test_support.hpp"

using namespace brdg;

namespace {
Signature sig(AlgebraClass cls, const char* props = "") {
  return Signature::make(cls, PropertySet::parse(props));
}
bool sat(const char* text, Signature s) { return decide_sat(parse_formula(text, s)).sat; }
bool valid(const char* text, Signature s) { return decide_valid(parse_universal(text, s)).valid; }

void check_witness(const Formula& f, const SatResult& r) {
  REQUIRE(r.witness);
  const SatWitness& w = *r.witness;
  CHECK(evaluate_formula(w.structure, f, w.valuation).status == EvalStatus::Satisfied);
  CHECK(check_certificate(w.structure, w.certificate));
  CHECK(static_cast<std::uint64_t>(w.structure.size()) <= formula_size(f));
  Completion c = completion(w.structure, w.certificate);
  CHECK(verify_embedding(w.structure, c));
  const Signature& s = f.signature();
  MemberReport m = check_member(c.algebra, s.cls, s.props);
  CHECK_MESSAGE(m.ok, m.violation);
  Valuation mv;
  for (auto& [name, x] : w.valuation) mv[name] = c.mu[x];
  CHECK(evaluate_formula(c.algebra, f, mv));
}
}  // namespace

TEST_CASE("decide_sat examples") {
  const Signature brdg = sig(AlgebraClass::Brdg);
  Formula f = parse_formula("x <= y & !(y <= x)", brdg);
  SatResult r = decide_sat(f);
  REQUIRE(r.sat);
  check_witness(f, r);
  CHECK(r.witness->structure.size() == 2);
  CHECK(r.witness->valuation.at("x") == r.witness->structure.zero);
  CHECK(r.witness->valuation.at("y") == r.witness->structure.one);

  CHECK_FALSE(sat("!(x * (x \\ y) <= y)", brdg));
  Formula comm = parse_formula("!(x * y = y * x)", brdg);
  SatResult rc = decide_sat(comm);
  REQUIRE(rc.sat);
  check_witness(comm, rc);
  CHECK_FALSE(sat("!(x * y = y * x)", sig(AlgebraClass::Brdg, "P1")));
  CHECK_FALSE(sat("!(x <= x * x)", sig(AlgebraClass::Brdg, "P3")));
  CHECK(sat("!(x <= x * x)", brdg));
}

TEST_CASE("decide_valid examples") {
  const Signature brdg = sig(AlgebraClass::Brdg);
  CHECK(valid("x * (y \\/ z) = x * y \\/ x * z", brdg));
  CHECK_FALSE(valid("x * y <= x", brdg));
  CHECK(valid("x * y <= x", sig(AlgebraClass::Brdg, "P2")));
  CHECK(valid("x * e = x", sig(AlgebraClass::Brdge, "P4")));
  CHECK(valid("x <= (x * y \\/ z) / y", brdg));
  CHECK(valid("y <= x \\ (x * y)", brdg));
  CHECK(valid("0 * x = 0 & x * 0 = 0", brdg));
  CHECK_FALSE(valid("x * y = y * x", brdg));
  CHECK_FALSE(valid("x <= x * x", brdg));
}

TEST_CASE("countermodels are certified and embed") {
  const char* laws[] = {"x * y <= x", "x * y = y * x", "x <= x * x", "x * y <= y"};
  for (const char* law : laws) {
    UniversalSentence s = parse_universal(law, sig(AlgebraClass::Brdg));
    ValidResult v = decide_valid(s);
    REQUIRE_FALSE(v.valid);
    check_witness(negate_for_validity(s), SatResult{true, v.countermodel, {}});
  }
}

TEST_CASE("bdo decisions go through the product translation") {
  const Signature bdo = sig(AlgebraClass::Bdo);
  Formula f = parse_formula("!(<> x = 0) & <> <> x = 0", bdo);
  SatResult r = decide_sat(f);
  REQUIRE(r.sat);
  check_witness(f, r);
  CHECK_FALSE(sat("!(<> 0 = 0)", bdo));
  CHECK_FALSE(sat("!(<> (x \\/ y) = <> x \\/ <> y)", bdo));
  CHECK(sat("!(<> (x /\\ y) = <> x /\\ <> y)", bdo));
}

TEST_CASE("contradiction and degenerate model") {
  const Signature brdg = sig(AlgebraClass::Brdg);
  CHECK_FALSE(sat("x <= y & !(x <= y)", brdg));
  Formula f = parse_formula("0 = 1", brdg);
  SatResult r = decide_sat(f);
  REQUIRE(r.sat);
  CHECK(r.witness->structure.size() == 1);
  CHECK(r.witness->certificate.degenerate);
}

TEST_CASE("describe_structure round trip") {
  PartialStructure id = chain(2);
  id.define(BinOp::Prod, 1, 1, 1);
  CHECK(decide_sat(describe_structure(id)).sat);
  CHECK_FALSE(decide_sat(describe_structure(n5())).sat);
  PartialStructure res = chain(2);
  res.define(BinOp::Under, 1, 1, 0);
  CHECK_FALSE(decide_sat(describe_structure(res)).sat);
  PartialStructure one(Signature::make(AlgebraClass::Brdg), 1);
  CHECK(decide_sat(describe_structure(one)).sat);
  CHECK(decide_sat(describe_structure(chain(3))).sat);
  CHECK(decide_sat(describe_structure(square())).sat);
}

TEST_CASE("naive enumerator on small formulas") {
  const Signature brdg = sig(AlgebraClass::Brdg);
  const char* cases[] = {"x <= x", "0 = 1", "!(0 = 1)", "!(x <= x)", "0 * 1 = 1", "!(1 \\ 1 = 1)", "0 /\\ 1 = 1"};
  for (const char* text : cases) {
    Formula f = parse_formula(text, brdg);
    CHECK_MESSAGE(decide_sat_naive(f).sat == decide_sat(f).sat, text);
  }
  Formula g = parse_formula("!(<> 0 = 0)", sig(AlgebraClass::Bdo));
  CHECK(decide_sat_naive(g).sat == decide_sat(g).sat);
}
