#ifndef BRDG_CORPUS_HPP
#define BRDG_CORPUS_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "brdg/formula.hpp"

namespace brdg {

struct CorpusOptions {
  int variables = 3;     // drawn from x, y, z
  int max_depth = 2;     // term depth
  int max_atoms = 3;
};

/// Random quantifier-free formula over the signature; deterministic in the
/// generator state.
Formula random_formula(const Signature& sig, std::mt19937_64& rng, const CorpusOptions& opt = {});

/// The same formula tree over another signature (symbols must exist there).
Formula with_signature(const Formula& f, const Signature& sig);

}  // namespace brdg

#endif  // BRDG_CORPUS_HPP
