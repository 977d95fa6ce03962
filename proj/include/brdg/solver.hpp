#ifndef BRDG_SOLVER_HPP
#define BRDG_SOLVER_HPP

#include <cstdint>
#include <optional>

#include "brdg/filters.hpp"
#include "brdg/formula.hpp"
#include "brdg/structure.hpp"

namespace brdg {

struct SolverOptions {
  int jobs = 1;
  bool naive = false;
  std::uint64_t naive_budget = 20'000'000;  // candidate structures
};

struct SatWitness {
  PartialStructure structure;
  Valuation valuation;
  Certificate certificate;
};

struct SearchStats {
  std::uint64_t leaves = 0;     // atom assignments reaching a leaf
  std::uint64_t types = 0;      // candidate filter types generated
  std::uint64_t structures = 0; // naive mode: candidate structures examined
};

struct SatResult {
  bool sat = false;
  std::optional<SatWitness> witness;
  SearchStats stats;
  explicit operator bool() const { return sat; }
};

/// Decides satisfiability in the class (and properties) of the formula's
/// signature. Throws SizeLimitError when the subterm universe exceeds 64
/// nodes or the naive budget runs out.
SatResult decide_sat(const Formula& f, const SolverOptions& opt = {});

struct ValidResult {
  bool valid = false;
  std::optional<SatWitness> countermodel;
  SearchStats stats;
  explicit operator bool() const { return valid; }
};

ValidResult decide_valid(const UniversalSentence& s, const SolverOptions& opt = {});

/// Diagram of a partial structure over variables x0..x{n-1}: distinctness,
/// constants, one literal per defined entry and a (negated) <= per pair.
Formula describe_structure(const PartialStructure& b);

/// Exhaustive search over partial structures of size <= s(f); tables only
/// for operation symbols occurring in f.
SatResult decide_sat_naive(const Formula& f, std::uint64_t budget = 20'000'000);

}  // namespace brdg

#endif  // BRDG_SOLVER_HPP
