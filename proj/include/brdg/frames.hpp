#ifndef BRDG_FRAMES_HPP
#define BRDG_FRAMES_HPP

#include <optional>
#include <string>
#include <vector>

#include "brdg/filters.hpp"
#include "brdg/structure.hpp"

namespace brdg {

/// Finite poset with a ternary relation (groupoid frame) or a binary one
/// (diamond frame), plus an optional unit set.
struct Frame {
  bool binary = false;
  int points = 0;
  std::vector<char> order;  // points^2, order[x*p+y] = x <= y
  std::vector<char> rel;    // points^3, or points^2 when binary
  std::optional<std::vector<int>> unit_set;

  static Frame make(int points, bool binary);
  bool leq(int x, int y) const { return order[x * points + y] != 0; }
  bool R(int x, int y, int z) const { return rel[(x * points + y) * points + z] != 0; }
  bool R(int x, int y) const { return rel[x * points + y] != 0; }
  void set_R(int x, int y, int z, bool v = true) { rel[(x * points + y) * points + z] = v; }
  void set_R(int x, int y, bool v = true) { rel[x * points + y] = v; }
};

struct FrameReport {
  bool ok = true;
  std::string violation;
  explicit operator bool() const { return ok; }
};

/// Monotonicity conditions plus the frame conditions selected by `props`.
FrameReport check_frame(const Frame& frame, PropertySet props = {});

/// Upsets (as point masks) of the frame's poset, ascending by (size, mask);
/// nullopt when there are more than `limit`.
std::optional<std::vector<Mask>> enumerate_upsets(const Frame& frame, std::size_t limit);

struct ComplexAlgebra {
  FiniteAlgebra algebra;
  std::vector<Mask> sets;  // element i is the upset sets[i]
  int index_of(Mask m) const;
};

/// Algebra of all upsets. Ternary frames give brdg (brdge with a unit set),
/// binary frames give bdo. Throws SizeLimitError above `max_elements`.
ComplexAlgebra complex_algebra(const Frame& frame, std::size_t max_elements = 256);

/// Subalgebra of the complex algebra generated by `generators` together with
/// the constants.
ComplexAlgebra complex_subalgebra(const Frame& frame, const std::vector<Mask>& generators,
                                  std::size_t max_elements = 256);

/// Prime filters of a finite distributive lattice, ascending as masks.
std::vector<Mask> algebra_prime_filters(const FiniteAlgebra& a);
/// The same by testing every subset; for cross-checks on small algebras.
std::vector<Mask> algebra_prime_filters_exhaustive(const FiniteAlgebra& a);

enum class RelationVariant { Product, Under, Over };

/// Canonical frame of an algebra; `variant` selects the equivalent
/// definition of the ternary relation used.
Frame canonical_frame(const FiniteAlgebra& a, RelationVariant variant = RelationVariant::Product);

struct EmbeddingReport {
  bool ok = true;
  std::string violation;
  explicit operator bool() const { return ok; }
};

/// a -> {prime filters containing a}, into the complex algebra of the
/// canonical frame.
EmbeddingReport verify_canonical_embedding(const FiniteAlgebra& a);

struct Completion {
  FiniteAlgebra algebra;
  std::vector<int> mu;  // carrier element -> algebra element
  Frame frame;
  std::vector<Mask> sets;
  bool generated = false;  // subalgebra generated by the image of mu
};

inline constexpr int kMaxCompletionFilters = 20;

/// Algebra built from the certificate's frame together with the map mu.
/// Throws SizeLimitError for families above 20 filters or algebras too big
/// to materialise, and std::invalid_argument for a stale certificate.
Completion completion(const PartialStructure& b, const Certificate& cert,
                      std::size_t max_elements = 256);

EmbeddingReport verify_embedding(const PartialStructure& b, const Completion& c);

}  // namespace brdg

#endif  // BRDG_FRAMES_HPP
