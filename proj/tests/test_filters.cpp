#include "doctest.h"

#include <algorithm>
#include <random>

#include "brdg/filters.hpp"
#include "brdg/frames.hpp"
#include "test_support.hpp"

using namespace brdg;

TEST_CASE("validate_partial_lattice") {
  CHECK(validate_partial_lattice(chain(2)));
  PartialStructure bad = chain(3);
  bad.define(BinOp::Meet, 1, 2, 0);
  LatticeReport r = validate_partial_lattice(bad);
  CHECK_FALSE(r);
  CHECK(validate_partial_lattice(n5()));
}

TEST_CASE("prime_filters examples") {
  CHECK(prime_filters(chain(2), {}) == FilterFamily{0b10});
  CHECK(prime_filters(chain(3), {}) == FilterFamily{0b100, 0b110});
  for (Mask f : prime_filters(n5(), {})) CHECK_FALSE((has(f, 3) && !has(f, 1)));
}

TEST_CASE("prime_filters agree with subset enumeration") {
  auto brute = [](const PartialStructure& b) {
    FilterFamily out;
    const int n = b.size();
    for (Mask f = 0; f < bit(n); ++f) {
      bool ok = has(f, b.one) && !has(f, b.zero);
      for (int x = 0; x < n && ok; ++x)
        for (int y = 0; y < n && ok; ++y) {
          if (has(f, x) && b.leq(x, y) && !has(f, y)) ok = false;
          int m = b.op(BinOp::Meet, x, y), j = b.op(BinOp::Join, x, y);
          if (m >= 0 && has(f, x) && has(f, y) && !has(f, m)) ok = false;
          if (j >= 0 && has(f, j) && !has(f, x) && !has(f, y)) ok = false;
        }
      if (ok) out.push_back(f);
    }
    return out;
  };
  CHECK(prime_filters(n5(), {}) == brute(n5()));
  CHECK(prime_filters(square(), {}) == brute(square()));
  PartialStructure s = square();
  s.define(BinOp::Join, 1, 2, 3);
  CHECK(prime_filters(s, {}) == brute(s));
}

TEST_CASE("accessibility examples") {
  PartialStructure id = chain(2);
  id.define(BinOp::Prod, 1, 1, 1);
  CHECK(accessibility(id, 0b10, 0b10, 0b10, {}));
  PartialStructure zero = chain(2);
  zero.define(BinOp::Prod, 1, 1, 0);
  CHECK_FALSE(accessibility(zero, 0b10, 0b10, 0b10, {}));
  PartialStructure c3 = chain(3);
  CHECK_FALSE(accessibility(c3, 0b110, 0b100, 0b100, PropertySet(PropertySet::kDecreasing)));
  CHECK_FALSE(accessibility(c3, 0b110, 0b110, 0b100, PropertySet(PropertySet::kDecreasing)));
}

TEST_CASE("refine_filters examples") {
  PartialStructure id = chain(2);
  id.define(BinOp::Prod, 1, 1, 1);
  CHECK(refine_filters(id, prime_filters(id, {}), {}) == FilterFamily{0b10});
  PartialStructure res = chain(2);
  res.define(BinOp::Under, 1, 1, 0);
  CHECK(refine_filters(res, prime_filters(res, {}), {}).empty());
  CHECK(refine_filters(chain(2), prime_filters(chain(2), {}), {}) == FilterFamily{0b10});
}

TEST_CASE("separation_check examples") {
  CHECK(separation_check(chain(2), {0b10}));
  PartialStructure n = n5();
  SeparationResult r = separation_check(n, prime_filters(n, {}));
  CHECK_FALSE(r);
  CHECK(r.a == 3);
  CHECK(r.b == 1);
  SeparationResult e = separation_check(chain(3), {});
  CHECK_FALSE(e);
}

TEST_CASE("certify examples") {
  PartialStructure id = chain(2);
  id.define(BinOp::Prod, 1, 1, 1);
  CertifyResult ok = certify(id);
  REQUIRE(ok);
  CHECK(ok.certificate->family == FilterFamily{0b10});
  CHECK(check_certificate(id, *ok.certificate));

  PartialStructure res = chain(2);
  res.define(BinOp::Under, 1, 1, 0);
  CertifyResult no = certify(res);
  REQUIRE_FALSE(no);
  CHECK(no.refusal->reason == "filter elimination emptied F");

  CertifyResult n = certify(n5());
  REQUIRE_FALSE(n);
  CHECK(n.refusal->reason == "separation (D) fails: (c,a)");
}

TEST_CASE("certify degenerate one-element structure") {
  PartialStructure one(Signature::make(AlgebraClass::Brdg), 1);
  one.define(BinOp::Prod, 0, 0, 0);
  CertifyResult r = certify(one);
  REQUIRE(r);
  CHECK(r.certificate->degenerate);
}

TEST_CASE("refine is order independent") {
  std::mt19937 rng(7);
  for (PartialStructure b : {n5(), square(), chain(4)}) {
    b.define(BinOp::Prod, b.one, b.one, b.one);
    b.define(BinOp::Prod, 1, 2, 1);
    FilterSystem sys = FilterSystem::from_structure(b, {});
    FilterFamily f0 = prime_filters(b, {});
    FilterFamily expect = refine(sys, f0);
    for (int i = 0; i < 100; ++i) {
      std::shuffle(f0.begin(), f0.end(), rng);
      CHECK(refine(sys, f0) == expect);
      CHECK(refine(sys, f0, RefineOptions{3}) == expect);
    }
  }
}

TEST_CASE("completion examples") {
  PartialStructure id = chain(2);
  id.define(BinOp::Prod, 1, 1, 1);
  Certificate c = *certify(id).certificate;
  Completion comp = completion(id, c);
  CHECK(comp.algebra.size == 2);
  CHECK(comp.algebra.prod[3] == 1);
  CHECK(verify_embedding(id, comp));
  CHECK(is_member(comp.algebra, AlgebraClass::Brdg, {}));

  PartialStructure c3 = chain(3);
  Certificate c3c = *certify(c3).certificate;
  CHECK(c3c.family == FilterFamily{0b100, 0b110});
  Completion k = completion(c3, c3c);
  CHECK(k.algebra.size == 3);
  CHECK(verify_embedding(c3, k));
}
