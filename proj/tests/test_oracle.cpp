#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "brdg/oracle.hpp"

using namespace brdg;

namespace {
std::vector<int> lattice_counts(int max_size) {
  std::vector<int> counts(max_size + 1, 0);
  for (const auto& L : enumerate_distributive_lattices(max_size)) ++counts[L.size];
  return counts;
}

std::size_t count(int size, AlgebraClass cls, PropertySet q) {
  std::size_t c = 0;
  for (const auto& L : enumerate_distributive_lattices(size))
    if (L.size == size) c += enumerate_operators(L, cls, q, [](const FiniteAlgebra&) { return true; });
  return c;
}

// Bounded distributive lattices on n points up to isomorphism, from raw
// order relations with 0 and 1 fixed at the ends.
int raw_lattice_count(int n) {
  if (n <= 2) return 1;
  const int m = n - 2;
  std::set<std::vector<char>> canon;
  const int pairs = m * m;
  for (int bits = 0; bits < (1 << pairs); ++bits) {
    std::vector<char> le(n * n, 0);
    for (int i = 0; i < n; ++i) {
      le[i * n + i] = 1;
      le[0 * n + i] = 1;
      le[i * n + n - 1] = 1;
    }
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        if (bits >> (a * m + b) & 1) le[(a + 1) * n + b + 1] = 1;
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b) {
        if (a != b && le[a * n + b] && le[b * n + a]) ok = false;
        for (int c = 0; c < n && ok; ++c)
          if (le[a * n + b] && le[b * n + c] && !le[a * n + c]) ok = false;
      }
    if (!ok) continue;
    auto bound = [&](int a, int b, bool upper) {
      int best = -1;
      for (int c = 0; c < n; ++c) {
        const bool is = upper ? le[a * n + c] && le[b * n + c] : le[c * n + a] && le[c * n + b];
        if (!is) continue;
        if (best < 0 || (upper ? le[c * n + best] : le[best * n + c])) best = c;
      }
      for (int c = 0; c < n; ++c) {
        const bool is = upper ? le[a * n + c] && le[b * n + c] : le[c * n + a] && le[c * n + b];
        if (is && !(upper ? le[best * n + c] : le[c * n + best])) return -1;
      }
      return best;
    };
    std::vector<int> meet(n * n), join(n * n);
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b) {
        meet[a * n + b] = bound(a, b, false);
        join[a * n + b] = bound(a, b, true);
        if (meet[a * n + b] < 0 || join[a * n + b] < 0) ok = false;
      }
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b)
        for (int c = 0; c < n && ok; ++c)
          if (meet[a * n + join[b * n + c]] != join[meet[a * n + b] * n + meet[a * n + c]]) ok = false;
    if (!ok) continue;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<char> best;
    do {
      std::vector<char> img(n * n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) img[perm[a] * n + perm[b]] = le[a * n + b];
      if (best.empty() || img < best) best = img;
    } while (std::next_permutation(perm.begin(), perm.end()));
    canon.insert(best);
  }
  return static_cast<int>(canon.size());
}
}  // namespace

TEST_CASE("lattice counts for sizes 1 to 5") {
  CHECK(lattice_counts(5) == std::vector<int>{0, 1, 1, 1, 2, 3});
  for (int n = 1; n <= 5; ++n) CHECK(raw_lattice_count(n) == lattice_counts(5)[n]);
  CHECK_THROWS_AS(enumerate_distributive_lattices(8), std::invalid_argument);
}

TEST_CASE("lattice sizes 6 and 7") {
  CHECK(lattice_counts(7)[6] == raw_lattice_count(6));
}

TEST_CASE("operators on the 2-chain") {
  CHECK(count(2, AlgebraClass::Brdg, {}) == 2);
  CHECK(count(2, AlgebraClass::Bdo, {}) == 2);
  CHECK(count(2, AlgebraClass::Bdbo, {}) == 2);
}

TEST_CASE("3-chain commutativity filter") {
  std::size_t all = 0, comm = 0;
  bool found_noncomm = false;
  for (const auto& L : enumerate_distributive_lattices(3)) {
    if (L.size != 3) continue;
    all += enumerate_operators(L, AlgebraClass::Brdg, {}, [&](const FiniteAlgebra& A) {
      if (A.prod[1 * 3 + 2] == 2 && A.prod[2 * 3 + 1] == 1) found_noncomm = true;
      return true;
    });
    comm += enumerate_operators(L, AlgebraClass::Brdg, PropertySet(PropertySet::kCommutative),
                                [&](const FiniteAlgebra& A) {
                                  CHECK(is_member(A, AlgebraClass::Brdg, PropertySet(PropertySet::kCommutative)));
                                  return true;
                                });
  }
  CHECK(found_noncomm);
  CHECK(comm < all);
}

TEST_CASE("every emitted algebra is a member") {
  for (AlgebraClass cls : {AlgebraClass::Bdo, AlgebraClass::Bdbo, AlgebraClass::Brdg, AlgebraClass::Brdge}) {
    std::vector<PropertySet> qs = {PropertySet()};
    if (cls == AlgebraClass::Brdg)
      for (int b = 1; b < 8; ++b) qs.push_back(PropertySet(b));
    if (cls == AlgebraClass::Brdge)
      for (int b = 0; b < 8; ++b) qs.push_back(PropertySet(b | 8));
    for (PropertySet q : qs)
      enumerate_algebras(4, cls, q, [&](const FiniteAlgebra& A) {
        MemberReport r = check_member(A, cls, Signature::make(cls, q).props);
        CHECK_MESSAGE(r.ok, r.violation);
        return r.ok;
      });
  }
}

TEST_CASE("enumeration is complete at sizes up to 3") {
  // Raw tables over the n-chain; chains have no nontrivial automorphisms.
  for (int n = 1; n <= 3; ++n) {
    const DistributiveLattice L = [&] {
      for (auto& l : enumerate_distributive_lattices(n))
        if (l.size == n) return l;
      throw std::logic_error("no chain");
    }();
    for (int q = 0; q < 8; ++q) {
      const PropertySet props(q);
      std::set<std::vector<int>> emitted;
      enumerate_operators(L, AlgebraClass::Brdg, props, [&](const FiniteAlgebra& A) {
        emitted.insert(A.prod);
        return true;
      });
      std::size_t raw = 0;
      const int cells = n * n;
      std::vector<int> t(cells, 0);
      while (true) {
        FiniteAlgebra A;
        A.sig = Signature::make(AlgebraClass::Brdg, props);
        A.size = n;
        A.order = L.order;
        A.meet = L.meet;
        A.join = L.join;
        A.zero = 0;
        A.one = n - 1;
        A.prod = t;
        A.under.assign(cells, 0);
        A.over.assign(cells, 0);
        bool residuated = true;
        for (int x = 0; x < n && residuated; ++x)
          for (int z = 0; z < n; ++z) {
            int best = -1;
            for (int y = 0; y < n; ++y)
              if (t[x * n + y] <= z) best = y;
            if (best < 0) { residuated = false; break; }
            A.under[x * n + z] = best;
            best = -1;
            for (int y = 0; y < n; ++y)
              if (t[y * n + x] <= z) best = y;
            if (best < 0) { residuated = false; break; }
            A.over[z * n + x] = best;
          }
        if (residuated && is_member(A, AlgebraClass::Brdg, props)) {
          ++raw;
          CHECK(emitted.count(t) == 1);
        }
        int i = 0;
        while (i < cells && ++t[i] == n) t[i++] = 0;
        if (i == cells) break;
      }
      CHECK(raw == emitted.size());
    }
  }
}

TEST_CASE("is_member examples") {
  FiniteAlgebra A;
  A.sig = Signature::make(AlgebraClass::Brdge);
  A.size = 2;
  A.order = {1, 1, 0, 1};
  A.meet = {0, 0, 0, 1};
  A.join = {0, 1, 1, 1};
  A.prod = A.meet;
  A.under = {1, 1, 0, 1};
  A.over = {1, 0, 1, 1};
  A.zero = 0;
  A.one = 1;
  A.unit = 1;
  CHECK(is_member(A, AlgebraClass::Brdge, PropertySet(15)));
  A.under[3] = 0;
  CHECK_FALSE(is_member(A, AlgebraClass::Brdge, PropertySet(8)));
}

TEST_CASE("brute_force_sat examples") {
  const Signature brdg = Signature::make(AlgebraClass::Brdg);
  BruteForceResult a = brute_force_sat(parse_formula("!(x * y = y * x)", brdg), 5);
  REQUIRE(a);
  CHECK(a.witness->algebra.size == 3);
  BruteForceResult b = brute_force_sat(parse_formula("!(x * (x \\ y) <= y)", brdg), 4);
  CHECK_FALSE(b);
  BruteForceResult c = brute_force_sat(parse_formula("0 = 1", brdg), 5);
  REQUIRE(c);
  CHECK(c.witness->algebra.size == 1);
}
