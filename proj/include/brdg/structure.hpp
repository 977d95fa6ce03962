#ifndef BRDG_STRUCTURE_HPP
#define BRDG_STRUCTURE_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "brdg/formula.hpp"

namespace brdg {

using Mask = std::uint64_t;
inline constexpr int kMaxCarrier = 64;

inline Mask bit(int i) { return Mask{1} << i; }
inline bool has(Mask m, int i) { return (m >> i) & 1u; }

class SizeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class BinOp : std::uint8_t { Meet, Join, Prod, Under, Over };
inline constexpr std::array<BinOp, 5> kBinOps = {BinOp::Meet, BinOp::Join, BinOp::Prod,
                                                 BinOp::Under, BinOp::Over};
std::string_view bin_op_name(BinOp op);  // "meet", "join", ...
Op to_op(BinOp op);
std::optional<BinOp> to_bin_op(Op op);

struct Entry {
  int a, b, c;  // a op b = c
};

/// Finite carrier 0..size-1 with a relation `leq` and partially defined
/// operation tables. Entries equal to -1 are undefined.
class PartialStructure {
 public:
  PartialStructure() = default;
  /// Reflexive order, all tables undefined, zero = 0, one = size - 1.
  PartialStructure(Signature sig, int size);

  const Signature& signature() const { return sig_; }
  void set_signature(Signature sig) { sig_ = sig; }
  int size() const { return size_; }

  bool leq(int a, int b) const { return has(above_[a], b); }
  Mask above(int a) const { return above_[a]; }
  void set_leq(int a, int b, bool value = true);
  /// Replaces the relation by its reflexive-transitive closure.
  void close_order();

  int op(BinOp o, int a, int b) const { return tables_[idx(o)][a * size_ + b]; }
  void define(BinOp o, int a, int b, int c);
  void undefine(BinOp o, int a, int b) { tables_[idx(o)][a * size_ + b] = -1; }
  int diamond(int a) const { return diamond_[a]; }
  void define_diamond(int a, int c);
  void undefine_diamond(int a) { diamond_[a] = -1; }

  std::vector<Entry> entries(BinOp o) const;
  std::vector<std::pair<int, int>> diamond_entries() const;
  std::size_t defined_count() const;

  int zero = 0;
  int one = 0;
  int unit = -1;

  /// Optional display names, one per element; empty means "use indices".
  std::vector<std::string> names;
  std::string name(int i) const;

  bool operator==(const PartialStructure&) const = default;

 private:
  static int idx(BinOp o) { return static_cast<int>(o); }

  Signature sig_;
  int size_ = 0;
  std::vector<Mask> above_;
  std::array<std::vector<int>, 5> tables_;
  std::vector<int> diamond_;
};

struct LatticeReport {
  bool ok = true;
  std::string violation;
  explicit operator bool() const { return ok; }
};

/// Order axioms, bounds, and glb/lub compatibility of defined meet/join entries.
LatticeReport validate_partial_lattice(const PartialStructure& b);

/// Total finite algebra. Tables absent from the class signature are empty.
struct FiniteAlgebra {
  Signature sig;
  int size = 0;
  std::vector<char> order;  // size * size, order[a*size+b] = a <= b
  std::vector<int> meet, join, prod, under, over;
  std::vector<int> diamond;
  int zero = 0;
  int one = 0;
  int unit = -1;

  bool leq(int a, int b) const { return order[a * size + b] != 0; }
  int apply(Op op, int a, int b = -1) const;
  bool operator==(const FiniteAlgebra&) const = default;
};

struct MemberReport {
  bool ok = true;
  std::string violation;
  explicit operator bool() const { return ok; }
};

/// Exhaustive check of the class axioms and of the properties in `props`.
MemberReport check_member(const FiniteAlgebra& a, AlgebraClass cls, PropertySet props);
inline bool is_member(const FiniteAlgebra& a, AlgebraClass cls, PropertySet props) {
  return check_member(a, cls, props).ok;
}

/// Views a total algebra as a partial structure with every entry defined.
PartialStructure to_partial(const FiniteAlgebra& a);

using Valuation = std::map<std::string, int>;

enum class EvalStatus { Satisfied, False, Undefined };

struct EvalResult {
  EvalStatus status = EvalStatus::False;
  TermId undefined_term = kNoId;  // set when status == Undefined
  explicit operator bool() const { return status == EvalStatus::Satisfied; }
};

EvalResult evaluate_formula(const PartialStructure& b, const Formula& f, const Valuation& v);
/// Total-algebra evaluation; throws std::out_of_range on a missing variable.
bool evaluate_formula(const FiniteAlgebra& a, const Formula& f, const Valuation& v);

}  // namespace brdg

#endif  // BRDG_STRUCTURE_HPP
