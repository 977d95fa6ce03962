#include "doctest.h"

#include <random>

#include "brdg/frames.hpp"
#include "brdg/oracle.hpp"
#include "test_support.hpp"

using namespace brdg;

namespace {

Frame point(bool related) {
  Frame f = Frame::make(1, false);
  f.order[0] = 1;
  if (related) f.set_R(0, 0, 0);
  return f;
}

const PropertySet kP1(PropertySet::kCommutative);
const PropertySet kP2(PropertySet::kDecreasing);
const PropertySet kP3(PropertySet::kSquareIncreasing);
const PropertySet kP4(PropertySet::kUnital);

bool member(const std::vector<Mask>& filters, int f, int x) { return has(filters[f], x); }

// Random order on n points, then R closed downward in the first two
// arguments and upward in the third.
Frame random_frame(int n, std::mt19937_64& rng) {
  Frame f = Frame::make(n, false);
  std::bernoulli_distribution coin(0.4);
  for (int x = 0; x < n; ++x) f.order[x * n + x] = 1;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (coin(rng)) f.order[x * n + y] = 1;
  for (int k = 0; k < n; ++k)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (f.leq(x, k) && f.leq(k, y)) f.order[x * n + y] = 1;
  std::bernoulli_distribution sparse(0.2);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (sparse(rng))
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
              for (int c = 0; c < n; ++c)
                if (f.leq(a, x) && f.leq(b, y) && f.leq(z, c)) f.set_R(a, b, c);
  return f;
}

}  // namespace

TEST_CASE("check_frame examples") {
  const Frame p = point(true);
  CHECK(check_frame(p, {}));
  CHECK(check_frame(p, kP1));
  CHECK(check_frame(p, kP2));
  CHECK(check_frame(p, kP3));
  CHECK_FALSE(check_frame(point(false), kP3));

  Frame two = Frame::make(2, false);
  two.order = {1, 1, 0, 1};
  two.set_R(1, 0, 0);
  const FrameReport r = check_frame(two, {});
  CHECK_FALSE(r);
  CHECK(r.violation.find("FR1") != std::string::npos);
}

TEST_CASE("complex_algebra examples") {
  const ComplexAlgebra full = complex_algebra(point(true));
  REQUIRE(full.algebra.size == 2);
  const int top = full.index_of(1);
  CHECK(full.algebra.prod[top * 2 + top] == top);
  CHECK(full.algebra.under[top * 2 + top] == top);
  CHECK(is_member(full.algebra, AlgebraClass::Brdg, {}));

  const ComplexAlgebra empty = complex_algebra(point(false));
  CHECK(empty.algebra.prod[top * 2 + top] == empty.index_of(0));
  CHECK(is_member(empty.algebra, AlgebraClass::Brdg, {}));

  Frame d = Frame::make(2, true);
  d.order = {1, 0, 0, 1};
  d.set_R(0, 1);
  const ComplexAlgebra bdo = complex_algebra(d);
  REQUIRE(bdo.algebra.size == 4);
  CHECK(bdo.algebra.diamond[bdo.index_of(0b10)] == bdo.index_of(0b01));
  CHECK(bdo.algebra.diamond[bdo.index_of(0b01)] == bdo.index_of(0));
  CHECK(is_member(bdo.algebra, AlgebraClass::Bdo, {}));
}

TEST_CASE("canonical_frame examples") {
  FiniteAlgebra meet_prod = complex_algebra(point(true)).algebra;
  Frame f = canonical_frame(meet_prod);
  REQUIRE(f.points == 1);
  CHECK(f.R(0, 0, 0));

  FiniteAlgebra zero_prod = complex_algebra(point(false)).algebra;
  f = canonical_frame(zero_prod);
  REQUIRE(f.points == 1);
  CHECK_FALSE(f.R(0, 0, 0));

  // 3-chain 0 < a < 1 with <>a = <>1 = 1.
  FiniteAlgebra chain3;
  bool found = false;
  enumerate_algebras(3, AlgebraClass::Bdo, {}, [&](const FiniteAlgebra& a) {
    if (a.size == 3 && a.diamond[1] == 2 && a.diamond[2] == 2) {
      chain3 = a;
      found = true;
      return false;
    }
    return true;
  });
  REQUIRE(found);
  const std::vector<Mask> filters = algebra_prime_filters(chain3);
  REQUIRE(filters.size() == 2);
  f = canonical_frame(chain3);
  REQUIRE(f.binary);
  int top_only = filters[0] == bit(2) ? 0 : 1;
  int upper = 1 - top_only;
  CHECK(filters[upper] == (bit(1) | bit(2)));
  CHECK(f.R(top_only, upper));
  CHECK(f.R(upper, upper));
  CHECK(f.R(upper, top_only));
  CHECK(f.R(top_only, top_only));
}

TEST_CASE("complex algebras of random frames are residuated") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 200; ++round) {
    const Frame f = random_frame(1 + round % 4, rng);
    REQUIRE(check_frame(f, {}));
    const FiniteAlgebra a = complex_algebra(f).algebra;
    const MemberReport m = check_member(a, AlgebraClass::Brdg, {});
    CHECK_MESSAGE(m.ok, m.violation);
    for (PropertySet q : {kP1, kP2, kP3})
      if (check_frame(f, q)) CHECK(is_member(a, AlgebraClass::Brdg, q));
  }
}

TEST_CASE("duality on oracle algebras") {
  for (AlgebraClass cls : {AlgebraClass::Bdo, AlgebraClass::Bdbo, AlgebraClass::Brdg, AlgebraClass::Brdge}) {
    const PropertySet base = cls == AlgebraClass::Brdge ? kP4 : PropertySet{};
    std::size_t seen = 0;
    enumerate_algebras(4, cls, base, [&](const FiniteAlgebra& a) {
      if (a.size == 1) return true;  // no prime filters
      ++seen;
      CHECK(verify_canonical_embedding(a));
      CHECK(algebra_prime_filters(a) == algebra_prime_filters_exhaustive(a));
      const Frame f = canonical_frame(a);
      CHECK(check_frame(f, base));
      if (cls == AlgebraClass::Brdg || cls == AlgebraClass::Brdge) {
        const Frame u = canonical_frame(a, RelationVariant::Under);
        const Frame o = canonical_frame(a, RelationVariant::Over);
        CHECK(f.rel == u.rel);
        CHECK(f.rel == o.rel);
      }
      if (cls == AlgebraClass::Bdo) return true;
      const std::vector<Mask> pf = algebra_prime_filters(a);
      const int k = static_cast<int>(pf.size());
      for (int h = 0; h < k; ++h)
        for (int x = 0; x < a.size; ++x)
          for (int y = 0; y < a.size; ++y) {
            if (!member(pf, h, a.prod[x * a.size + y])) continue;
            bool witness = false;
            for (int g1 = 0; g1 < k && !witness; ++g1)
              for (int g2 = 0; g2 < k && !witness; ++g2)
                witness = member(pf, g1, x) && member(pf, g2, y) && f.R(g1, g2, h);
            CHECK(witness);
          }
      if (cls == AlgebraClass::Brdge)
        for (int x = 0; x < k; ++x) {
          bool right = false, left = false;
          for (int g = 0; g < k; ++g) {
            if (!member(pf, g, a.unit)) continue;
            right = right || f.R(x, g, x);
            left = left || f.R(g, x, x);
          }
          CHECK(right);
          CHECK(left);
        }
      return true;
    });
    CHECK(seen > 0);
  }
}

TEST_CASE("property correspondence on oracle algebras") {
  for (PropertySet q : {kP1, kP2, kP3}) {
    enumerate_algebras(4, AlgebraClass::Brdg, q, [&](const FiniteAlgebra& a) {
      if (a.size == 1) return true;
      const Frame f = canonical_frame(a);
      CHECK(check_frame(f, q));
      CHECK(is_member(complex_algebra(f).algebra, AlgebraClass::Brdg, q));
      return true;
    });
  }
  enumerate_algebras(4, AlgebraClass::Brdge, kP4, [&](const FiniteAlgebra& a) {
    if (a.size == 1) return true;
    const Frame f = canonical_frame(a);
    REQUIRE(f.unit_set);
    CHECK(check_frame(f, kP4));
    CHECK(is_member(complex_algebra(f).algebra, AlgebraClass::Brdge, kP4));
    return true;
  });
  // The 2-element brdg with zero product is not square-increasing, and
  // its frame fails R3.
  CHECK_FALSE(check_frame(canonical_frame(complex_algebra(point(false)).algebra), kP3));
}

TEST_CASE("completion examples") {
  PartialStructure two = chain(2);
  two.define(BinOp::Prod, 1, 1, 1);
  const CertifyResult r2 = certify(two);
  REQUIRE(r2);
  const Completion a2 = completion(two, *r2.certificate);
  CHECK(a2.algebra.size == 2);
  CHECK(a2.sets[a2.mu[0]] == 0);
  CHECK(a2.sets[a2.mu[1]] == 1);
  CHECK(verify_embedding(two, a2));

  const PartialStructure three = chain(3);
  const CertifyResult r3 = certify(three);
  REQUIRE(r3);
  CHECK(r3.certificate->family.size() == 2);
  const Completion a3 = completion(three, *r3.certificate);
  CHECK(a3.algebra.size == 3);
  CHECK(verify_embedding(three, a3));
  CHECK(is_member(a3.algebra, AlgebraClass::Brdg, {}));
}
