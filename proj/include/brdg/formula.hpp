#ifndef BRDG_FORMULA_HPP
#define BRDG_FORMULA_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace brdg {

enum class AlgebraClass : std::uint8_t { Bdo, Bdbo, Brdg, Brdge };

std::string_view to_string(AlgebraClass cls);
AlgebraClass parse_algebra_class(std::string_view text);

/// Optional laws on the product: P1 commutative, P2 decreasing,
/// P3 square-increasing, P4 unital.
class PropertySet {
 public:
  enum Property : std::uint8_t {
    kCommutative = 1,
    kDecreasing = 2,
    kSquareIncreasing = 4,
    kUnital = 8,
  };

  constexpr PropertySet() = default;
  constexpr explicit PropertySet(std::uint8_t bits) : bits_(bits & 0xF) {}

  constexpr bool has(Property p) const { return (bits_ & p) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint8_t bits() const { return bits_; }
  constexpr PropertySet with(Property p) const { return PropertySet(bits_ | p); }
  constexpr PropertySet without(Property p) const {
    return PropertySet(bits_ & ~p);
  }
  constexpr bool subset_of(PropertySet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr bool operator==(const PropertySet&) const = default;

  /// "P1,P3" style; empty set prints as "".
  std::string to_string() const;
  std::vector<std::string> names() const;
  static PropertySet parse(std::string_view csv);

 private:
  std::uint8_t bits_ = 0;
};

enum class Op : std::uint8_t {
  Var,
  Zero,
  One,
  Unit,
  Meet,
  Join,
  Prod,
  Under,
  Over,
  Diamond,
};

int arity(Op op);
bool is_constant(Op op);
std::string_view op_symbol(Op op);

class SignatureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Language of one of the four classes together with the property set Q.
/// P4 is present exactly when the unit constant is, i.e. for Brdge.
struct Signature {
  AlgebraClass cls = AlgebraClass::Brdg;
  PropertySet props;

  static Signature make(AlgebraClass cls, PropertySet props = {});

  bool has_op(Op op) const;
  bool has_unit() const { return cls == AlgebraClass::Brdge; }
  bool has_residuals() const {
    return cls == AlgebraClass::Brdg || cls == AlgebraClass::Brdge;
  }
  int constant_count() const { return has_unit() ? 3 : 2; }
  bool operator==(const Signature&) const = default;
};

using TermId = std::uint32_t;
using FormulaId = std::uint32_t;
inline constexpr std::uint32_t kNoId = std::numeric_limits<std::uint32_t>::max();

struct TermNode {
  Op op = Op::Var;
  TermId lhs = kNoId;
  TermId rhs = kNoId;
  std::uint32_t var = kNoId;  // variable index when op == Var
};

/// Hash-consed term graph. Children always have smaller ids than their
/// parents, so id order is a topological order.
class TermDag {
 public:
  TermId variable(std::string_view name);
  TermId constant(Op op);
  TermId apply(Op op, TermId lhs, TermId rhs = kNoId);

  const TermNode& node(TermId id) const { return nodes_.at(id); }
  std::size_t size() const { return nodes_.size(); }
  const std::string& var_name(std::uint32_t var) const {
    return var_names_.at(var);
  }
  std::size_t var_count() const { return var_names_.size(); }

 private:
  struct Key {
    Op op;
    TermId lhs, rhs;
    std::uint32_t var;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  TermId intern(const TermNode& n);

  std::vector<TermNode> nodes_;
  std::unordered_map<Key, TermId, KeyHash> index_;
  std::vector<std::string> var_names_;
  std::unordered_map<std::string, std::uint32_t> var_index_;
};

enum class FKind : std::uint8_t { Eq, Leq, Not, And, Or };

struct FNode {
  FKind kind = FKind::Eq;
  std::uint32_t a = kNoId;  // atoms: lhs term; connectives: first operand
  std::uint32_t b = kNoId;  // atoms: rhs term; And/Or: second operand
};

/// Quantifier-free formula: a Boolean combination of (s = t) and (s <= t)
/// over a term DAG. Immutable once `root` is set and shared by value.
class Formula {
 public:
  explicit Formula(Signature sig) : sig_(sig) {}

  const Signature& signature() const { return sig_; }
  TermDag& terms() { return terms_; }
  const TermDag& terms() const { return terms_; }

  // Term builders check the symbol against the signature.
  TermId var(std::string_view name) { return terms_.variable(name); }
  TermId constant(Op op);
  TermId apply(Op op, TermId lhs, TermId rhs = kNoId);

  FormulaId eq(TermId s, TermId t);
  FormulaId leq(TermId s, TermId t);
  FormulaId negate(FormulaId f);
  FormulaId conj(FormulaId f, FormulaId g);
  FormulaId disj(FormulaId f, FormulaId g);
  void set_root(FormulaId f) { root_ = f; }

  FormulaId root() const { return root_; }
  const FNode& fnode(FormulaId id) const { return fnodes_.at(id); }
  std::size_t fnode_count() const { return fnodes_.size(); }

  /// Atom formula ids reachable from the root, each listed once, in
  /// first-visit (left-to-right) order.
  std::vector<FormulaId> atoms() const;
  /// Term ids occurring in the formula (closed under subterms), ascending.
  std::vector<TermId> used_terms() const;
  /// Distinct variables occurring in the formula, in order of first use.
  std::vector<std::uint32_t> used_variables() const;

 private:
  FormulaId push(FNode n);

  Signature sig_;
  TermDag terms_;
  std::vector<FNode> fnodes_;
  FormulaId root_ = kNoId;
};

struct UniversalSentence {
  std::vector<std::string> variables;
  Formula body;
};

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, Signature };
  ParseError(Kind kind, std::size_t position, const std::string& message);
  Kind kind() const { return kind_; }
  std::size_t position() const { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

Formula parse_formula(std::string_view text, const Signature& sig);
/// Parses a formula and takes its universal closure over the variables it uses.
UniversalSentence parse_universal(std::string_view text, const Signature& sig);

std::string print_term(const TermDag& dag, TermId id);
std::string print_formula(const Formula& f);
std::string print_formula(const Formula& f, FormulaId id);

/// Structural equality of the trees rooted at the two roots (variables
/// compared by name).
bool structurally_equal(const Formula& a, const Formula& b);

/// |Op| counted by occurrence, plus distinct variables, plus |sigma_con|.
std::uint64_t formula_size(const Formula& f);

/// Rewrites every <>t into t * 1; the result lives over the bdbo signature.
Formula diamond_to_circ(const Formula& f);

Formula negate_for_validity(const UniversalSentence& sentence);

/// Copies the tree under `id` of `src` into `dst`, returning the new id.
FormulaId copy_into(Formula& dst, const Formula& src, FormulaId id);
TermId copy_term_into(Formula& dst, const TermDag& src, TermId id);

}  // namespace brdg

#endif  // BRDG_FORMULA_HPP
