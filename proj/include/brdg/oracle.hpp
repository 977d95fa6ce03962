#ifndef BRDG_ORACLE_HPP
#define BRDG_ORACLE_HPP

#include <functional>
#include <optional>
#include <vector>

#include "brdg/formula.hpp"
#include "brdg/structure.hpp"

namespace brdg {

/// Finite poset on points 0..n-1, naturally labelled (x < y implies x < y as
/// integers). below[y] holds the strict lower set of y.
struct Poset {
  int points = 0;
  std::vector<Mask> below;
  bool leq(int x, int y) const { return x == y || has(below[y], x); }
};

/// Downset lattice of a poset. Elements are ordered by (size, mask) so the
/// bottom is 0 and the top is size-1.
struct DistributiveLattice {
  Poset seed;
  int size = 0;
  std::vector<Mask> downsets;
  std::vector<char> order;
  std::vector<int> meet, join;
  int zero = 0;
  int one = 0;
  std::vector<int> irreducibles;                // join-irreducible elements, ascending
  std::vector<std::vector<int>> automorphisms;  // element permutations, identity first

  bool leq(int a, int b) const { return order[a * size + b] != 0; }
};

inline constexpr int kMaxOracleLattice = 7;

/// One lattice per isomorphism type, for every size 1..max_size, ascending
/// by size. Throws std::invalid_argument when max_size exceeds 7.
std::vector<DistributiveLattice> enumerate_distributive_lattices(int max_size);

/// Visitor returns false to stop the enumeration.
using AlgebraVisitor = std::function<bool(const FiniteAlgebra&)>;

/// Every operator structure of `cls` over `lattice` satisfying `props`, one
/// per isomorphism class. Returns the number of algebras visited.
std::size_t enumerate_operators(const DistributiveLattice& lattice, AlgebraClass cls,
                                PropertySet props, const AlgebraVisitor& visit);

/// enumerate_operators over every lattice of size <= max_size.
std::size_t enumerate_algebras(int max_size, AlgebraClass cls, PropertySet props,
                               const AlgebraVisitor& visit);

struct OracleWitness {
  FiniteAlgebra algebra;
  Valuation valuation;
};

struct BruteForceResult {
  std::optional<OracleWitness> witness;  // nullopt means exhausted, not UNSAT
  std::size_t algebras_checked = 0;
  explicit operator bool() const { return witness.has_value(); }
};

/// First (algebra, valuation) satisfying the formula among all algebras of
/// the formula's class and properties with at most max_size elements.
BruteForceResult brute_force_sat(const Formula& f, int max_size);

/// Same for several formulas of one signature at once, sharing the
/// enumeration.
std::vector<BruteForceResult> brute_force_sat_batch(const std::vector<const Formula*>& formulas,
                                                    int max_size);

}  // namespace brdg

#endif  // BRDG_ORACLE_HPP
