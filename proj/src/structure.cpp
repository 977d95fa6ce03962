#include "brdg/structure.hpp"

#include <functional>

namespace brdg {

std::string_view bin_op_name(BinOp op) {
  switch (op) {
    case BinOp::Meet: return "meet";
    case BinOp::Join: return "join";
    case BinOp::Prod: return "prod";
    case BinOp::Under: return "under";
    case BinOp::Over: return "over";
  }
  return "?";
}

Op to_op(BinOp op) {
  switch (op) {
    case BinOp::Meet: return Op::Meet;
    case BinOp::Join: return Op::Join;
    case BinOp::Prod: return Op::Prod;
    case BinOp::Under: return Op::Under;
    case BinOp::Over: return Op::Over;
  }
  return Op::Meet;
}

std::optional<BinOp> to_bin_op(Op op) {
  switch (op) {
    case Op::Meet: return BinOp::Meet;
    case Op::Join: return BinOp::Join;
    case Op::Prod: return BinOp::Prod;
    case Op::Under: return BinOp::Under;
    case Op::Over: return BinOp::Over;
    default: return std::nullopt;
  }
}

PartialStructure::PartialStructure(Signature sig, int size) : sig_(sig), size_(size) {
  if (size < 1) throw std::invalid_argument("carrier must be nonempty");
  if (size > kMaxCarrier)
    throw SizeLimitError("carrier of " + std::to_string(size) + " elements exceeds the limit of " +
                         std::to_string(kMaxCarrier));
  above_.resize(size);
  for (int i = 0; i < size; ++i) above_[i] = bit(i);
  for (auto& t : tables_) t.assign(static_cast<std::size_t>(size) * size, -1);
  diamond_.assign(size, -1);
  one = size - 1;
}

void PartialStructure::set_leq(int a, int b, bool value) {
  if (value)
    above_[a] |= bit(b);
  else
    above_[a] &= ~bit(b);
}

void PartialStructure::close_order() {
  for (int i = 0; i < size_; ++i) above_[i] |= bit(i);
  for (int k = 0; k < size_; ++k)
    for (int i = 0; i < size_; ++i)
      if (has(above_[i], k)) above_[i] |= above_[k];
}

void PartialStructure::define(BinOp o, int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0 || a >= size_ || b >= size_ || c >= size_)
    throw std::out_of_range("operation entry outside the carrier");
  tables_[idx(o)][a * size_ + b] = c;
}

void PartialStructure::define_diamond(int a, int c) {
  if (a < 0 || c < 0 || a >= size_ || c >= size_)
    throw std::out_of_range("operation entry outside the carrier");
  diamond_[a] = c;
}

std::vector<Entry> PartialStructure::entries(BinOp o) const {
  std::vector<Entry> out;
  const auto& t = tables_[idx(o)];
  for (int a = 0; a < size_; ++a)
    for (int b = 0; b < size_; ++b)
      if (int c = t[a * size_ + b]; c >= 0) out.push_back({a, b, c});
  return out;
}

std::vector<std::pair<int, int>> PartialStructure::diamond_entries() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < size_; ++a)
    if (diamond_[a] >= 0) out.emplace_back(a, diamond_[a]);
  return out;
}

std::size_t PartialStructure::defined_count() const {
  std::size_t n = diamond_entries().size();
  for (BinOp o : kBinOps) n += entries(o).size();
  return n;
}

std::string PartialStructure::name(int i) const {
  if (i >= 0 && static_cast<std::size_t>(i) < names.size() && !names[i].empty()) return names[i];
  return std::to_string(i);
}

LatticeReport validate_partial_lattice(const PartialStructure& b) {
  const int n = b.size();
  auto fail = [](std::string msg) { return LatticeReport{false, std::move(msg)}; };
  auto nm = [&](int i) { return b.name(i); };
  for (int a = 0; a < n; ++a)
    if (!b.leq(a, a)) return fail("leq is not reflexive at " + nm(a));
  for (int a = 0; a < n; ++a)
    for (int c = a + 1; c < n; ++c)
      if (b.leq(a, c) && b.leq(c, a))
        return fail("leq is not antisymmetric: " + nm(a) + " and " + nm(c));
  for (int a = 0; a < n; ++a)
    for (int m = 0; m < n; ++m)
      if (b.leq(a, m) && (b.above(m) & ~b.above(a)))
        return fail("leq is not transitive through " + nm(m));
  if (b.zero < 0 || b.zero >= n || b.one < 0 || b.one >= n)
    return fail("zero/one outside the carrier");
  if (b.signature().has_unit() && (b.unit < 0 || b.unit >= n))
    return fail("unit e missing or outside the carrier");
  for (int a = 0; a < n; ++a) {
    if (!b.leq(b.zero, a)) return fail("zero is not below " + nm(a));
    if (!b.leq(a, b.one)) return fail("one is not above " + nm(a));
  }
  auto below = [&](int x) {
    Mask m = 0;
    for (int y = 0; y < n; ++y)
      if (b.leq(y, x)) m |= bit(y);
    return m;
  };
  for (const Entry& e : b.entries(BinOp::Meet)) {
    Mask lower = below(e.a) & below(e.b);
    bool glb = has(lower, e.c);
    for (int y = 0; glb && y < n; ++y)
      if (has(lower, y) && !b.leq(y, e.c)) glb = false;
    if (!glb)
      return fail("meet " + nm(e.a) + " /\\ " + nm(e.b) + " = " + nm(e.c) +
                  " is not the greatest lower bound");
  }
  for (const Entry& e : b.entries(BinOp::Join)) {
    Mask upper = b.above(e.a) & b.above(e.b);
    bool lub = has(upper, e.c);
    for (int y = 0; lub && y < n; ++y)
      if (has(upper, y) && !b.leq(e.c, y)) lub = false;
    if (!lub)
      return fail("join " + nm(e.a) + " \\/ " + nm(e.b) + " = " + nm(e.c) +
                  " is not the least upper bound");
  }
  return {};
}

int FiniteAlgebra::apply(Op op, int a, int b) const {
  switch (op) {
    case Op::Zero: return zero;
    case Op::One: return one;
    case Op::Unit: return unit;
    case Op::Meet: return meet.at(a * size + b);
    case Op::Join: return join.at(a * size + b);
    case Op::Prod: return prod.at(a * size + b);
    case Op::Under: return under.at(a * size + b);
    case Op::Over: return over.at(a * size + b);
    case Op::Diamond: return diamond.at(a);
    case Op::Var: break;
  }
  throw std::invalid_argument("apply() on a variable");
}

MemberReport check_member(const FiniteAlgebra& A, AlgebraClass cls, PropertySet props) {
  const int n = A.size;
  auto fail = [](std::string msg) { return MemberReport{false, std::move(msg)}; };
  auto s = [](int i) { return std::to_string(i); };
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  if (n < 1 || A.order.size() != nn || A.meet.size() != nn || A.join.size() != nn)
    return fail("lattice tables have the wrong shape");
  const bool needs_prod = cls != AlgebraClass::Bdo;
  const bool needs_res = cls == AlgebraClass::Brdg || cls == AlgebraClass::Brdge;
  if (needs_prod && A.prod.size() != nn) return fail("missing product table");
  if (needs_res && (A.under.size() != nn || A.over.size() != nn))
    return fail("missing residual tables");
  if (cls == AlgebraClass::Bdo && A.diamond.size() != static_cast<std::size_t>(n))
    return fail("missing diamond table");
  if (!props.empty() && !needs_res) return fail("properties apply only to brdg/brdge");
  if (props.has(PropertySet::kUnital) != (cls == AlgebraClass::Brdge))
    return fail("P4 must accompany class brdge");

  auto in = [&](const std::vector<int>& t) {
    for (int v : t)
      if (v < 0 || v >= n) return false;
    return true;
  };
  if (!in(A.meet) || !in(A.join) || (needs_prod && !in(A.prod)) ||
      (needs_res && (!in(A.under) || !in(A.over))) ||
      (cls == AlgebraClass::Bdo && !in(A.diamond)))
    return fail("table entry outside the carrier");

  for (int a = 0; a < n; ++a) {
    if (!A.leq(a, a)) return fail("order not reflexive at " + s(a));
    for (int b = 0; b < n; ++b) {
      if (a != b && A.leq(a, b) && A.leq(b, a)) return fail("order not antisymmetric");
      for (int c = 0; c < n; ++c)
        if (A.leq(a, b) && A.leq(b, c) && !A.leq(a, c)) return fail("order not transitive");
    }
  }
  if (A.zero < 0 || A.zero >= n || A.one < 0 || A.one >= n) return fail("bounds outside the carrier");
  for (int a = 0; a < n; ++a)
    if (!A.leq(A.zero, a) || !A.leq(a, A.one)) return fail("0/1 are not the bounds");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int m = A.meet[a * n + b], j = A.join[a * n + b];
      if (!A.leq(m, a) || !A.leq(m, b) || !A.leq(a, j) || !A.leq(b, j))
        return fail("meet/join are not bounds at (" + s(a) + "," + s(b) + ")");
      for (int c = 0; c < n; ++c) {
        if (A.leq(c, a) && A.leq(c, b) && !A.leq(c, m))
          return fail("meet is not greatest at (" + s(a) + "," + s(b) + ")");
        if (A.leq(a, c) && A.leq(b, c) && !A.leq(j, c))
          return fail("join is not least at (" + s(a) + "," + s(b) + ")");
      }
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (A.meet[a * n + A.join[b * n + c]] != A.join[A.meet[a * n + b] * n + A.meet[a * n + c]])
          return fail("lattice is not distributive");

  if (cls == AlgebraClass::Bdo) {
    if (A.diamond[A.zero] != A.zero) return fail("<>0 != 0");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (A.diamond[A.join[a * n + b]] != A.join[A.diamond[a] * n + A.diamond[b]])
          return fail("<> does not preserve the join of " + s(a) + " and " + s(b));
    return {};
  }

  auto P = [&](int a, int b) { return A.prod[a * n + b]; };
  for (int a = 0; a < n; ++a) {
    if (P(a, A.zero) != A.zero || P(A.zero, a) != A.zero)
      return fail("product does not annihilate 0 at " + s(a));
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const int bc = A.join[b * n + c];
        if (P(a, bc) != A.join[P(a, b) * n + P(a, c)])
          return fail("product does not distribute over joins on the right at " + s(a));
        if (P(bc, a) != A.join[P(b, a) * n + P(c, a)])
          return fail("product does not distribute over joins on the left at " + s(a));
      }
  }
  if (needs_res) {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          const bool l = A.leq(P(x, y), z);
          if (l != A.leq(y, A.under[x * n + z]) || l != A.leq(x, A.over[z * n + y]))
            return fail("residuation fails at (" + s(x) + "," + s(y) + "," + s(z) + ")");
        }
  }
  if (props.has(PropertySet::kCommutative))
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (P(a, b) != P(b, a)) return fail("P1 fails at (" + s(a) + "," + s(b) + ")");
  if (props.has(PropertySet::kDecreasing))
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (!A.leq(P(a, b), a) || !A.leq(P(a, b), b))
          return fail("P2 fails at (" + s(a) + "," + s(b) + ")");
  if (props.has(PropertySet::kSquareIncreasing))
    for (int a = 0; a < n; ++a)
      if (!A.leq(a, P(a, a))) return fail("P3 fails at " + s(a));
  if (cls == AlgebraClass::Brdge) {
    if (A.unit < 0 || A.unit >= n) return fail("unit missing");
    for (int a = 0; a < n; ++a)
      if (P(a, A.unit) != a || P(A.unit, a) != a) return fail("e is not a unit at " + s(a));
  }
  return {};
}

PartialStructure to_partial(const FiniteAlgebra& a) {
  PartialStructure b(a.sig, a.size);
  for (int x = 0; x < a.size; ++x)
    for (int y = 0; y < a.size; ++y) b.set_leq(x, y, a.leq(x, y));
  auto copy = [&](BinOp o, const std::vector<int>& t) {
    if (t.empty()) return;
    for (int x = 0; x < a.size; ++x)
      for (int y = 0; y < a.size; ++y) b.define(o, x, y, t[x * a.size + y]);
  };
  copy(BinOp::Meet, a.meet);
  copy(BinOp::Join, a.join);
  copy(BinOp::Prod, a.prod);
  copy(BinOp::Under, a.under);
  copy(BinOp::Over, a.over);
  for (std::size_t x = 0; x < a.diamond.size(); ++x) b.define_diamond(static_cast<int>(x), a.diamond[x]);
  b.zero = a.zero;
  b.one = a.one;
  b.unit = a.unit;
  return b;
}

namespace {

template <typename AtomFn>
bool eval_bool(const Formula& f, FormulaId id, const AtomFn& atom) {
  const FNode& n = f.fnode(id);
  switch (n.kind) {
    case FKind::Eq:
    case FKind::Leq: return atom(n);
    case FKind::Not: return !eval_bool(f, n.a, atom);
    case FKind::And: return eval_bool(f, n.a, atom) && eval_bool(f, n.b, atom);
    case FKind::Or: return eval_bool(f, n.a, atom) || eval_bool(f, n.b, atom);
  }
  return false;
}

}  // namespace

EvalResult evaluate_formula(const PartialStructure& b, const Formula& f, const Valuation& v) {
  const TermDag& dag = f.terms();
  std::vector<int> val(dag.size(), -1);
  for (TermId t : f.used_terms()) {
    const TermNode& n = dag.node(t);
    int r = -1;
    switch (n.op) {
      case Op::Var: {
        auto it = v.find(dag.var_name(n.var));
        if (it == v.end())
          throw std::out_of_range("valuation misses variable " + dag.var_name(n.var));
        r = it->second;
        if (r < 0 || r >= b.size()) throw std::out_of_range("valuation outside the carrier");
        break;
      }
      case Op::Zero: r = b.zero; break;
      case Op::One: r = b.one; break;
      case Op::Unit: r = b.unit; break;
      case Op::Diamond: r = b.diamond(val[n.lhs]); break;
      default: r = b.op(*to_bin_op(n.op), val[n.lhs], val[n.rhs]);
    }
    if (r < 0) return {EvalStatus::Undefined, t};
    val[t] = r;
  }
  if (f.root() == kNoId) return {EvalStatus::Satisfied, kNoId};
  bool ok = eval_bool(f, f.root(), [&](const FNode& a) {
    return a.kind == FKind::Eq ? val[a.a] == val[a.b] : b.leq(val[a.a], val[a.b]);
  });
  return {ok ? EvalStatus::Satisfied : EvalStatus::False, kNoId};
}

bool evaluate_formula(const FiniteAlgebra& a, const Formula& f, const Valuation& v) {
  const TermDag& dag = f.terms();
  std::vector<int> val(dag.size(), -1);
  for (TermId t : f.used_terms()) {
    const TermNode& n = dag.node(t);
    if (n.op == Op::Var) {
      val[t] = v.at(dag.var_name(n.var));
    } else if (arity(n.op) == 0) {
      val[t] = a.apply(n.op, -1);
    } else {
      val[t] = a.apply(n.op, val[n.lhs], n.rhs == kNoId ? -1 : val[n.rhs]);
    }
  }
  if (f.root() == kNoId) return true;
  return eval_bool(f, f.root(), [&](const FNode& x) {
    return x.kind == FKind::Eq ? val[x.a] == val[x.b] : a.leq(val[x.a], val[x.b]);
  });
}

}  // namespace brdg
