#include "brdg/solver.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace brdg {

namespace {

enum class Tri : std::uint8_t { False, True, Unknown };

Tri eval3(const Formula& f, FormulaId id, const std::map<FormulaId, Tri>& atom_value) {
  const FNode& n = f.fnode(id);
  switch (n.kind) {
    case FKind::Eq:
    case FKind::Leq: {
      auto it = atom_value.find(id);
      return it == atom_value.end() ? Tri::Unknown : it->second;
    }
    case FKind::Not: {
      const Tri v = eval3(f, n.a, atom_value);
      return v == Tri::Unknown ? v : (v == Tri::True ? Tri::False : Tri::True);
    }
    case FKind::And: {
      const Tri a = eval3(f, n.a, atom_value);
      if (a == Tri::False) return a;
      const Tri b = eval3(f, n.b, atom_value);
      if (b == Tri::False) return b;
      return a == Tri::True && b == Tri::True ? Tri::True : Tri::Unknown;
    }
    case FKind::Or: {
      const Tri a = eval3(f, n.a, atom_value);
      if (a == Tri::True) return a;
      const Tri b = eval3(f, n.b, atom_value);
      if (b == Tri::True) return b;
      return a == Tri::False && b == Tri::False ? Tri::False : Tri::Unknown;
    }
  }
  return Tri::Unknown;
}

// Each element is named after the first constant or term of f taking it as
// value; unnamed elements keep their index.
void name_elements(PartialStructure& b, const Formula& f, const Valuation& v) {
  const TermDag& dag = f.terms();
  std::vector<int> val(dag.size(), -1);
  b.names.assign(b.size(), "");
  auto claim = [&](int x, const std::string& name) {
    if (x >= 0 && b.names[x].empty()) b.names[x] = name;
  };
  claim(b.zero, "0");
  claim(b.one, "1");
  if (b.signature().has_unit()) claim(b.unit, "e");
  for (TermId t : f.used_terms()) {
    const TermNode& n = dag.node(t);
    int r = -1;
    switch (n.op) {
      case Op::Var: r = v.at(dag.var_name(n.var)); break;
      case Op::Zero: r = b.zero; break;
      case Op::One: r = b.one; break;
      case Op::Unit: r = b.unit; break;
      case Op::Diamond: r = val[n.lhs] < 0 ? -1 : b.diamond(val[n.lhs]); break;
      default:
        if (val[n.lhs] >= 0 && val[n.rhs] >= 0) r = b.op(*to_bin_op(n.op), val[n.lhs], val[n.rhs]);
    }
    val[t] = r;
    claim(r, print_term(dag, t));
  }
  for (int x = 0; x < b.size(); ++x) claim(x, std::to_string(x));
}

struct Forbidden {
  Mask in, out;  // a type t is excluded when t ⊇ in and t ∩ out = ∅
};

// Subterm universe of a formula with the signature constants added.
struct Universe {
  Formula work;
  std::vector<TermId> nodes;     // position -> term id
  std::map<TermId, int> pos;     // term id -> position
  int zero = -1, one = -1, unit = -1;
  FilterSystem sys;
  std::vector<std::vector<Forbidden>> local;  // by highest position involved
  std::vector<FormulaId> atoms;

  explicit Universe(const Formula& f) : work(f) {
    const Signature& sig = work.signature();
    work.constant(Op::Zero);
    work.constant(Op::One);
    if (sig.has_unit()) work.constant(Op::Unit);
    std::vector<TermId> used = f.used_terms();
    const TermDag& dag = work.terms();
    for (TermId t = 0; t < dag.size(); ++t) {
      const bool in_formula = std::binary_search(used.begin(), used.end(), t);
      if (in_formula || is_constant(dag.node(t).op)) nodes.push_back(t);
    }
    if (nodes.size() > static_cast<std::size_t>(kMaxCarrier))
      throw SizeLimitError("subterm universe has " + std::to_string(nodes.size()) +
                           " nodes; the limit is 64");
    for (std::size_t i = 0; i < nodes.size(); ++i) pos[nodes[i]] = static_cast<int>(i);
    std::vector<Entry> prod, under, over;
    local.resize(nodes.size());
    const bool p3 = sig.props.has(PropertySet::kSquareIncreasing);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const TermNode& n = dag.node(nodes[i]);
      const int t = static_cast<int>(i);
      switch (n.op) {
        case Op::Zero: zero = t; break;
        case Op::One: one = t; break;
        case Op::Unit: unit = t; break;
        case Op::Prod: {
          const int a = pos.at(n.lhs), b = pos.at(n.rhs);
          prod.push_back({a, b, t});
          if (p3) local[t].push_back({bit(a) | bit(b), bit(t)});
          break;
        }
        case Op::Under: {
          const int a = pos.at(n.lhs), b = pos.at(n.rhs);
          under.push_back({a, b, t});
          if (p3) local[t].push_back({bit(a) | bit(t), bit(b)});
          break;
        }
        case Op::Over: {
          const int a = pos.at(n.lhs), b = pos.at(n.rhs);
          over.push_back({a, b, t});
          if (p3) local[t].push_back({bit(t) | bit(b), bit(a)});
          break;
        }
        case Op::Diamond: throw std::logic_error("diamond reached the core search");
        default: break;
      }
    }
    sys = FilterSystem::build(static_cast<int>(nodes.size()), sig.props, std::move(prod),
                              std::move(under), std::move(over), one, unit);
    atoms = work.atoms();
  }

  int size() const { return static_cast<int>(nodes.size()); }

  std::pair<int, int> atom_sides(FormulaId a) const {
    const FNode& n = work.fnode(a);
    return {pos.at(n.a), pos.at(n.b)};
  }

  // All types over the universe consistent with the positive atoms.
  FilterFamily types(const std::vector<FormulaId>& positive,
                     const std::vector<std::pair<int, int>>& merged = {}) const {
    std::vector<std::vector<Forbidden>> cons = local;
    for (FormulaId a : positive) {
      auto [s, t] = atom_sides(a);
      const int hi = std::max(s, t);
      cons[hi].push_back({bit(s), bit(t)});
      if (work.fnode(a).kind == FKind::Eq) cons[hi].push_back({bit(t), bit(s)});
    }
    for (auto [s, t] : merged) {
      const int hi = std::max(s, t);
      cons[hi].push_back({bit(s), bit(t)});
      cons[hi].push_back({bit(t), bit(s)});
    }
    const TermDag& dag = work.terms();
    FilterFamily out;
    const int n = size();
    auto rec = [&](auto& self, int i, Mask type) -> void {
      if (i == n) {
        out.push_back(type);
        return;
      }
      const TermNode& node = dag.node(nodes[i]);
      auto try_value = [&](bool v) {
        const Mask t = v ? type | bit(i) : type;
        for (const Forbidden& c : cons[i])
          if ((t & c.in) == c.in && (t & c.out) == 0) return;
        self(self, i + 1, t);
      };
      switch (node.op) {
        case Op::Zero: try_value(false); break;
        case Op::One: try_value(true); break;
        case Op::Meet: try_value(has(type, pos.at(node.lhs)) && has(type, pos.at(node.rhs))); break;
        case Op::Join: try_value(has(type, pos.at(node.lhs)) || has(type, pos.at(node.rhs))); break;
        default:
          try_value(false);
          try_value(true);
      }
    };
    rec(rec, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
  }

  bool separated(FormulaId a, const FilterFamily& fam) const {
    auto [s, t] = atom_sides(a);
    const bool eq = work.fnode(a).kind == FKind::Eq;
    for (Mask f : fam) {
      if (has(f, s) && !has(f, t)) return true;
      if (eq && has(f, t) && !has(f, s)) return true;
    }
    return false;
  }

  // Partial structure whose elements are the classes of nodes with equal
  // membership across the family.
  SatWitness witness(const FilterFamily& fam, const CertifyOptions& copt) const {
    const int n = size();
    const std::size_t words = (fam.size() + 63) / 64;
    std::vector<std::vector<std::uint64_t>> column(n, std::vector<std::uint64_t>(words, 0));
    for (std::size_t k = 0; k < fam.size(); ++k)
      for (int i = 0; i < n; ++i)
        if (has(fam[k], i)) column[i][k / 64] |= std::uint64_t{1} << (k % 64);
    auto count = [](const std::vector<std::uint64_t>& c) {
      int s = 0;
      for (auto w : c) s += __builtin_popcountll(w);
      return s;
    };
    std::map<std::vector<std::uint64_t>, int> first_pos;
    for (int i = 0; i < n; ++i) first_pos.emplace(column[i], i);
    std::vector<std::pair<std::pair<int, int>, const std::vector<std::uint64_t>*>> keyed;
    for (auto& [col, p] : first_pos) keyed.push_back({{count(col), p}, &col});
    std::sort(keyed.begin(), keyed.end());
    std::map<std::vector<std::uint64_t>, int> cls_of;
    for (std::size_t c = 0; c < keyed.size(); ++c) cls_of[*keyed[c].second] = static_cast<int>(c);
    std::vector<int> cls(n);
    for (int i = 0; i < n; ++i) cls[i] = cls_of.at(column[i]);

    const int m = static_cast<int>(keyed.size());
    const Signature sig = work.signature();
    PartialStructure b(sig, m);
    const TermDag& dag = work.terms();
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y) {
        const auto& cx = *keyed[x].second;
        const auto& cy = *keyed[y].second;
        bool sub = true;
        for (std::size_t w = 0; w < words && sub; ++w) sub = (cx[w] & ~cy[w]) == 0;
        if (sub) b.set_leq(x, y);
      }
    b.zero = cls[zero];
    b.one = cls[one];
    if (unit >= 0) b.unit = cls[unit];
    for (int i = 0; i < n; ++i) {
      const TermNode& node = dag.node(nodes[i]);
      if (auto o = to_bin_op(node.op)) b.define(*o, cls[pos.at(node.lhs)], cls[pos.at(node.rhs)], cls[i]);
    }
    Valuation v;
    for (int i = 0; i < n; ++i) {
      const TermNode& node = dag.node(nodes[i]);
      if (node.op == Op::Var) v[dag.var_name(node.var)] = cls[i];
    }
    CertifyResult cr = certify(b, copt);
    if (!cr) throw std::logic_error("search produced an uncertified structure: " + cr.refusal->reason);
    if (evaluate_formula(b, work, v).status != EvalStatus::Satisfied)
      throw std::logic_error("search produced a structure that does not satisfy the formula");
    name_elements(b, work, v);
    return SatWitness{std::move(b), std::move(v), std::move(*cr.certificate)};
  }
};

SatResult search(const Formula& f, const SolverOptions& opt) {
  Universe U(f);
  SatResult result;
  const RefineOptions ropt{opt.jobs};
  const CertifyOptions copt{opt.jobs};
  if (U.work.root() == kNoId) {
    FilterFamily fam = refine(U.sys, U.types({}), ropt);
    result.sat = true;
    result.witness = U.witness(fam, copt);
    return result;
  }
  std::map<FormulaId, Tri> value;
  std::vector<FormulaId> positive, negative;
  const std::size_t k = U.atoms.size();
  // Family witnessing the leaf, or nullopt; an empty family stands for the
  // one-element model.
  auto witnessed = [&](FilterFamily fam) -> std::optional<FilterFamily> {
    if (!fam.empty()) {
      bool ok = true;
      for (FormulaId a : negative)
        if (!U.separated(a, fam)) {
          ok = false;
          break;
        }
      if (ok) return fam;
    }
    if (negative.empty()) return FilterFamily{};
    return std::nullopt;
  };
  auto leaf = [&]() -> bool {
    ++result.stats.leaves;
    FilterFamily types = U.types(positive);
    result.stats.types += types.size();
    std::optional<FilterFamily> fam = witnessed(refine(U.sys, std::move(types), ropt));
    if (!fam) return false;
    // Greedy merges toward a small model: each node joins the first earlier
    // representative (constants first) that keeps the leaf satisfiable. The
    // greatest family under an extra equation is the greatest one inside
    // the current family, so candidates are filtered rather than rebuilt.
    if (!fam->empty()) {
      std::vector<int> reps = {U.zero, U.one};
      if (U.unit >= 0) reps.push_back(U.unit);
      for (int i = 0; i < U.size(); ++i) {
        if (std::find(reps.begin(), reps.end(), i) != reps.end()) continue;
        bool joined = false;
        for (int r : reps) {
          FilterFamily kept;
          for (Mask t : *fam)
            if (has(t, r) == has(t, i)) kept.push_back(t);
          if (kept.size() == fam->size()) {
            joined = true;
            break;
          }
          if (kept.empty()) continue;
          if (auto smaller = witnessed(refine(U.sys, std::move(kept), ropt)); smaller && !smaller->empty()) {
            fam = std::move(smaller);
            joined = true;
            break;
          }
        }
        if (!joined) reps.push_back(i);
      }
    }
    result.witness = U.witness(*fam, copt);
    return true;
  };
  auto rec = [&](auto& self, std::size_t i) -> bool {
    const Tri now = eval3(U.work, U.work.root(), value);
    if (now == Tri::False) return false;
    if (i == k) return now == Tri::True && leaf();
    const FormulaId a = U.atoms[i];
    value[a] = Tri::True;
    positive.push_back(a);
    if (self(self, i + 1)) return true;
    positive.pop_back();
    value[a] = Tri::False;
    negative.push_back(a);
    if (self(self, i + 1)) return true;
    negative.pop_back();
    value.erase(a);
    return false;
  };
  result.sat = rec(rec, 0);
  return result;
}

PartialStructure bdbo_to_bdo(const PartialStructure& s) {
  PartialStructure b(Signature::make(AlgebraClass::Bdo), s.size());
  for (int x = 0; x < s.size(); ++x)
    for (int y = 0; y < s.size(); ++y)
      if (s.leq(x, y)) b.set_leq(x, y);
  for (BinOp o : {BinOp::Meet, BinOp::Join})
    for (const Entry& e : s.entries(o)) b.define(o, e.a, e.b, e.c);
  for (const Entry& e : s.entries(BinOp::Prod)) {
    if (e.b != s.one) throw std::logic_error("product entry without 1 after diamond translation");
    b.define_diamond(e.a, e.c);
  }
  b.zero = s.zero;
  b.one = s.one;
  return b;
}

}  // namespace

SatResult decide_sat(const Formula& f, const SolverOptions& opt) {
  if (opt.naive) return decide_sat_naive(f, opt.naive_budget);
  if (f.signature().cls != AlgebraClass::Bdo) return search(f, opt);
  SatResult r = search(diamond_to_circ(f), opt);
  if (r.witness) {
    PartialStructure b = bdbo_to_bdo(r.witness->structure);
    CertifyResult cr = certify(b, CertifyOptions{opt.jobs});
    if (!cr) throw std::logic_error("bdo witness lost its certificate: " + cr.refusal->reason);
    if (evaluate_formula(b, f, r.witness->valuation).status != EvalStatus::Satisfied)
      throw std::logic_error("bdo witness does not satisfy the formula");
    name_elements(b, f, r.witness->valuation);
    r.witness->structure = std::move(b);
    r.witness->certificate = std::move(*cr.certificate);
  }
  return r;
}

ValidResult decide_valid(const UniversalSentence& s, const SolverOptions& opt) {
  SatResult r = decide_sat(negate_for_validity(s), opt);
  ValidResult out;
  out.valid = !r.sat;
  out.countermodel = std::move(r.witness);
  out.stats = r.stats;
  return out;
}

Formula describe_structure(const PartialStructure& b) {
  Formula f(b.signature());
  const int n = b.size();
  std::vector<TermId> x(n);
  for (int i = 0; i < n; ++i) x[i] = f.var("x" + std::to_string(i));
  FormulaId acc = kNoId;
  auto add = [&](FormulaId lit) { acc = acc == kNoId ? lit : f.conj(acc, lit); };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) add(f.negate(f.eq(x[i], x[j])));
  add(f.eq(x[b.zero], f.constant(Op::Zero)));
  add(f.eq(x[b.one], f.constant(Op::One)));
  if (b.signature().has_unit()) add(f.eq(x[b.unit], f.constant(Op::Unit)));
  for (BinOp o : kBinOps) {
    if (!f.signature().has_op(to_op(o))) continue;
    for (const Entry& e : b.entries(o)) add(f.eq(f.apply(to_op(o), x[e.a], x[e.b]), x[e.c]));
  }
  for (auto [a, c] : b.diamond_entries()) add(f.eq(f.apply(Op::Diamond, x[a]), x[c]));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const FormulaId lit = f.leq(x[i], x[j]);
      add(b.leq(i, j) ? lit : f.negate(lit));
    }
  f.set_root(acc);
  return f;
}

namespace {

struct NaiveSearch {
  const Formula& f;
  std::uint64_t budget;
  SatResult result;
  Signature sig;
  std::vector<std::string> vars;
  std::vector<BinOp> ops;
  bool diamond = false;

  NaiveSearch(const Formula& formula, std::uint64_t b) : f(formula), budget(b), sig(formula.signature()) {
    const TermDag& dag = f.terms();
    for (std::uint32_t v : f.used_variables()) vars.push_back(dag.var_name(v));
    for (TermId t : f.used_terms()) {
      const Op op = dag.node(t).op;
      if (auto o = to_bin_op(op); o && std::find(ops.begin(), ops.end(), *o) == ops.end()) ops.push_back(*o);
      if (op == Op::Diamond) diamond = true;
    }
    std::sort(ops.begin(), ops.end());
  }

  bool check(const PartialStructure& b) {
    if (++result.stats.structures > budget) throw SizeLimitError("naive enumeration budget exhausted");
    if (!validate_partial_lattice(b)) return false;
    const int n = b.size();
    std::vector<int> val(vars.size(), 0);
    while (true) {
      Valuation v;
      for (std::size_t i = 0; i < vars.size(); ++i) v[vars[i]] = val[i];
      if (evaluate_formula(b, f, v).status == EvalStatus::Satisfied) {
        CertifyResult cr = certify(b);
        if (!cr) return false;
        result.witness = SatWitness{b, v, std::move(*cr.certificate)};
        return true;
      }
      std::size_t i = 0;
      while (i < val.size() && ++val[i] == n) val[i++] = 0;
      if (i == val.size()) return false;
    }
  }

  // Fills table cells one by one with "undefined" or an element.
  bool tables(PartialStructure& b, std::size_t op_index, int cell) {
    const int n = b.size();
    const int cells_per_op = n * n;
    if (op_index == ops.size()) {
      if (!diamond) return check(b);
      return diamonds(b, 0);
    }
    if (cell == cells_per_op) return tables(b, op_index + 1, 0);
    const BinOp o = ops[op_index];
    const int a = cell / n, c = cell % n;
    for (int v = -1; v < n; ++v) {
      if (v < 0) b.undefine(o, a, c);
      else b.define(o, a, c, v);
      if (tables(b, op_index, cell + 1)) return true;
    }
    b.undefine(o, a, c);
    return false;
  }

  bool diamonds(PartialStructure& b, int cell) {
    if (cell == b.size()) return check(b);
    for (int v = -1; v < b.size(); ++v) {
      if (v < 0) b.undefine_diamond(cell);
      else b.define_diamond(cell, v);
      if (diamonds(b, cell + 1)) return true;
    }
    b.undefine_diamond(cell);
    return false;
  }

  bool run() {
    const std::uint64_t bound = formula_size(f);
    for (int n = 1; n <= static_cast<int>(std::min<std::uint64_t>(bound, kMaxCarrier)); ++n) {
      // zero is element 0 and one is element n-1; orders on the middle.
      const int m = std::max(0, n - 2);
      const int pairs = m * m;
      if (pairs > 30) throw SizeLimitError("naive enumeration carrier too large");
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << pairs); ++bits) {
        PartialStructure b(sig, n);
        bool ok = true;
        for (int i = 0; i < n; ++i) {
          b.set_leq(0, i);
          b.set_leq(i, n - 1);
        }
        for (int i = 0; i < m && ok; ++i)
          for (int j = 0; j < m; ++j)
            if (bits >> (i * m + j) & 1) {
              if (i == j) {
                ok = false;
                break;
              }
              b.set_leq(i + 1, j + 1);
            }
        if (!ok) continue;
        for (int i = 0; i < n && ok; ++i)
          for (int j = 0; j < n && ok; ++j)
            for (int l = 0; l < n && ok; ++l)
              if (b.leq(i, j) && b.leq(j, l) && !b.leq(i, l)) ok = false;
        for (int i = 0; i < n && ok; ++i)
          for (int j = 0; j < n && ok; ++j)
            if (i != j && b.leq(i, j) && b.leq(j, i)) ok = false;
        if (!ok) continue;
        b.zero = 0;
        b.one = n - 1;
        const int units = sig.has_unit() ? n : 1;
        for (int e = 0; e < units; ++e) {
          if (sig.has_unit()) b.unit = e;
          if (tables(b, 0, 0)) return true;
        }
      }
    }
    return false;
  }
};

}  // namespace

SatResult decide_sat_naive(const Formula& f, std::uint64_t budget) {
  NaiveSearch s(f, budget);
  s.result.sat = s.run();
  return std::move(s.result);
}

}  // namespace brdg
