#include "doctest.h"

#include <sstream>

#include "brdg/cli.hpp"
#include "brdg/json_io.hpp"

using namespace brdg;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "brdg");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cli examples") {
  CHECK(call({"valid", "--class", "brdg", "--file", "data/formulas/dlrg1.fml"}).code == 0);

  const Outcome n5 = call({"certify", "--class", "brdg", "--structure", "data/structures/n5.json"});
  CHECK(n5.code == 1);
  CHECK(n5.out.find("separation (D) fails: (c,a)") != std::string::npos);

  CHECK(call({"sat", "--class", "brdg", "--file", "data/formulas/contradiction.fml"}).code == 1);
}

TEST_CASE("cli json output") {
  const Outcome r = call({"valid", "--class", "brdg", "--file", "data/formulas/commutative.fml", "--json"});
  REQUIRE(r.code == 1);
  const Json j = Json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["result"] == "invalid");
  CHECK(j["countermodel"]["structure"]["carrier"].get<int>() >= 2);

  const Outcome cert = call({"certify", "--structure", "data/structures/chain3.json", "--json", "--seed", "3"});
  CHECK(cert.code == 0);
  const Json c = Json::parse(cert.out);
  CHECK(c["result"] == "certified");
  CHECK(c["order_invariant"] == true);
}

TEST_CASE("cli json is independent of --jobs") {
  for (const char* file : {"data/formulas/incomparable.fml", "data/formulas/contradiction.fml"}) {
    const Outcome one = call({"sat", "--class", "brdg", "--prop", "P1", "--file", file, "--json", "--jobs", "1"});
    const Outcome four = call({"sat", "--class", "brdg", "--prop", "P1", "--file", file, "--json", "--jobs", "4"});
    CHECK(one.out == four.out);
  }
  const Outcome one = call({"valid", "--class", "brdg", "--file", "data/formulas/commutative.fml", "--json", "--jobs", "1"});
  const Outcome four = call({"valid", "--class", "brdg", "--file", "data/formulas/commutative.fml", "--json", "--jobs", "4"});
  CHECK(one.out == four.out);
}

TEST_CASE("cli exit codes for errors") {
  CHECK(call({}).code == 2);
  CHECK(call({"sat", "--class", "nope", "--formula", "x = x"}).code == 2);
  CHECK(call({"sat", "--class", "brdg", "--formula", "x <="}).code == 2);
  CHECK(call({"sat", "--class", "bdo", "--formula", "x * y = x"}).code == 2);
  CHECK(call({"sat", "--class", "brdg", "--file", "missing.fml"}).code == 2);
  CHECK(call({"certify", "--structure", "data/formulas/dlrg1.fml"}).code == 2);
  const Outcome e = call({"sat", "--class", "brdg"});
  CHECK(e.code == 2);
  CHECK_FALSE(e.err.empty());
  // 65 distinct variables overflow the subterm universe.
  std::string big = "x0 = x0";
  for (int i = 1; i <= 64; ++i) big += " & x" + std::to_string(i) + " = x" + std::to_string(i);
  CHECK(call({"sat", "--class", "brdg", "--formula", big}).code == 3);
}

TEST_CASE("cli oracle and tiling") {
  const Outcome en = call({"oracle", "enumerate", "--class", "brdg", "--max-size", "3"});
  CHECK(en.code == 0);
  CHECK(en.out.find("size 3: 20 algebras") != std::string::npos);
  CHECK(call({"oracle", "sat", "--class", "brdg", "--formula", "!(x <= y) & !(y <= x)", "--max-size", "3"}).code == 1);
  CHECK(call({"oracle", "sat", "--class", "brdg", "--formula", "!(x <= y) & !(y <= x)", "--max-size", "4"}).code == 0);

  CHECK(call({"tiling", "solve", "-i", "data/tiling/trivial_win.json"}).code == 0);
  CHECK(call({"tiling", "solve", "-i", "data/tiling/stuck_eloise.json"}).code == 1);
  CHECK(call({"tiling", "roundtrip", "-i", "data/tiling/win_on_match.json"}).code == 0);
  const Outcome gen = call({"tiling", "gen", "-i", "data/tiling/trivial_win.json"});
  CHECK(gen.code == 0);
  CHECK(gen.out.find("!(") != std::string::npos);
}
