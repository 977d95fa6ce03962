#ifndef BRDG_TILING_HPP
#define BRDG_TILING_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "brdg/formula.hpp"
#include "brdg/json_io.hpp"
#include "brdg/structure.hpp"

namespace brdg {

class TilingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Tile {
  int left = 0, right = 0, up = 0, down = 0;
};

/// tiles[0] is the boundary tile, tiles.back() the winning tile; the
/// players place tiles 1..s+1. first_row holds one tile index per column.
struct TilingInstance {
  int colors = 1;
  std::vector<Tile> tiles;
  int n = 1;
  std::vector<int> first_row;

  int s() const { return static_cast<int>(tiles.size()) - 2; }
  int winning() const { return static_cast<int>(tiles.size()) - 1; }
};

void validate_instance(const TilingInstance& t);
TilingInstance tiling_from_json(const Json& j);
Json tiling_to_json(const TilingInstance& t);

/// N = (s+2)^(n+2) and m = ceil(log2 N). Throws TilingError on overflow.
std::uint64_t round_bound(const TilingInstance& t);
int counter_bits(const TilingInstance& t);

// ---------------------------------------------------------------- modal

/// Formula over top, variables, not, n-ary and/or, diamond and the global
/// box. An empty And is top, an empty Or is bottom; box(f) is not<>not f.
struct ModalFormula {
  enum class Kind : std::uint8_t { Top, Var, Not, And, Or, Diamond, Global };
  Kind kind = Kind::Top;
  std::string name;
  std::vector<ModalFormula> args;

  static ModalFormula top();
  static ModalFormula bottom();
  static ModalFormula var(std::string name);
  static ModalFormula neg(ModalFormula f);
  static ModalFormula conj(std::vector<ModalFormula> fs);
  static ModalFormula disj(std::vector<ModalFormula> fs);
  static ModalFormula dia(ModalFormula f);
  static ModalFormula box(ModalFormula f);
  static ModalFormula global(ModalFormula f);

  bool operator==(const ModalFormula&) const = default;
};

std::string print_modal(const ModalFormula& f);
/// Distinct variable names, sorted.
std::vector<std::string> modal_variables(const ModalFormula& f);

/// Variable names used by the reduction: p1..pn, c<i>t<u>, e, w, q1..qm.
std::string position_var(int i);
std::string column_var(int i, int u);
std::string counter_var(int j);
std::vector<std::string> variable_inventory(const TilingInstance& t);

/// The conjunction Init, R1..R9, Win, F, in that order, as the 12
/// arguments of the top-level And.
ModalFormula build_modal_formula(const TilingInstance& t);

struct KripkeModel {
  int worlds = 0;
  std::vector<std::vector<int>> succ;
  std::map<std::string, std::vector<char>> valuation;  // one flag per world

  bool holds(const std::string& p, int w) const { return valuation.at(p)[w] != 0; }
};

/// Worlds satisfying f. Throws std::invalid_argument on an unknown variable.
std::vector<char> extension(const KripkeModel& m, const ModalFormula& f);
bool kripke_check(const KripkeModel& m, int world, const ModalFormula& f);

// ----------------------------------------------------------------- game

enum class GameResult { EloiseWins, AbelardWins };

struct GameOptions {
  std::uint64_t round_cap = 0;             // 0 means N
  std::uint64_t max_states = 50'000'000;   // positions times rounds
};

GameResult solve_game(const TilingInstance& t, const GameOptions& opt = {});

struct PointedModel {
  KripkeModel model;
  int root = 0;
};

/// Reachable positions under Eloise's winning strategy with every Abelard
/// reply, plus the forced replies at finished positions. Throws TilingError
/// when Abelard wins.
PointedModel strategy_model(const TilingInstance& t, const GameOptions& opt = {});

struct BoundedSearchResult {
  std::optional<PointedModel> model;
  int max_worlds = 0;
  std::uint64_t nodes = 0;
};

/// Looks for a point-generated model of f with at most max_worlds worlds.
/// f must be a conjunction of modal-depth-1 formulas and globally boxed
/// ones, none nested. A miss only rules out models up to that size.
BoundedSearchResult bounded_search(const ModalFormula& f, int max_worlds = 6,
                                   std::uint64_t max_nodes = 50'000'000);

// ---------------------------------------------------------- translation

struct FreshVariable {
  enum class Kind { Complement, Box, BoxNeg, BoxDisj, BoxConjDisj };
  Kind kind = Kind::Complement;
  std::string name;
  std::vector<std::vector<std::string>> args;  // one row except BoxConjDisj
};

struct Translation {
  Formula formula{Signature::make(AlgebraClass::Bdo)};
  std::vector<std::string> base_variables;
  std::vector<FreshVariable> fresh;
  std::size_t zeta_atoms = 0;
  std::size_t global_conjuncts = 0;
  std::size_t box_subformulas = 0;
  TermId chi = kNoId;
};

/// zeta and Tr of a formula in the shape produced by build_modal_formula.
/// Throws TilingError on a box shape outside the handled ones or on a
/// global box inside a modal operator.
Translation translate(const ModalFormula& f);

using WorldSet = std::vector<char>;

/// Complex algebra of the frame (W, =, R): every subset of W.
struct PowersetAlgebra {
  KripkeModel frame;  // valuation unused

  int worlds() const { return frame.worlds; }
  WorldSet diamond(const WorldSet& a) const;
};

using SetValuation = std::map<std::string, WorldSet>;

struct ModelAlgebra {
  PowersetAlgebra algebra;
  SetValuation valuation;
};

ModelAlgebra model_to_algebra(const KripkeModel& m, const Translation& tr);
WorldSet evaluate_term(const PowersetAlgebra& a, const Formula& f, TermId t, const SetValuation& v);
bool evaluate_formula(const PowersetAlgebra& a, const Formula& f, const SetValuation& v);

/// Table form of the powerset algebra; element k is the set with bit mask
/// k. Throws SizeLimitError above 6 worlds.
FiniteAlgebra to_finite_algebra(const PowersetAlgebra& a);
Valuation to_element_valuation(const SetValuation& v);

/// Prime filters as worlds, R(F,G) iff a in G implies <>a in F, V(p) the
/// filters containing v(p). root is a filter containing v(chi); throws
/// TilingError when v(chi) = 0.
PointedModel algebra_to_model(const FiniteAlgebra& a, const Valuation& v, const Translation& tr);
PointedModel algebra_to_model(const PowersetAlgebra& a, const SetValuation& v, const Translation& tr);

}  // namespace brdg

#endif  // BRDG_TILING_HPP
