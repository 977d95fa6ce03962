#include "brdg/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace brdg {

namespace {

bool size_less(Mask a, Mask b) {
  const int pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
  return pa != pb ? pa < pb : a < b;
}

std::vector<Mask> downsets_of(const Poset& p) {
  std::vector<Mask> out;
  for (Mask d = 0; d < bit(p.points); ++d) {
    bool ok = true;
    for (int y = 0; y < p.points && ok; ++y)
      if (has(d, y) && (p.below[y] & ~d)) ok = false;
    if (ok) out.push_back(d);
  }
  std::sort(out.begin(), out.end(), size_less);
  return out;
}

std::uint64_t encode(const Poset& p, const std::vector<int>& perm) {
  std::uint64_t code = 0;
  for (int x = 0; x < p.points; ++x)
    for (int y = 0; y < p.points; ++y)
      if (x != y && p.leq(x, y)) code |= std::uint64_t{1} << (perm[x] * p.points + perm[y]);
  return code;
}

std::uint64_t canonical_code(const Poset& p) {
  std::vector<int> perm(p.points);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~std::uint64_t{0};
  do best = std::min(best, encode(p, perm));
  while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

DistributiveLattice lattice_of(const Poset& p) {
  DistributiveLattice L;
  L.seed = p;
  L.downsets = downsets_of(p);
  const int n = L.size = static_cast<int>(L.downsets.size());
  std::map<Mask, int> index;
  for (int i = 0; i < n; ++i) index[L.downsets[i]] = i;
  L.order.assign(n * n, 0);
  L.meet.assign(n * n, 0);
  L.join.assign(n * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Mask x = L.downsets[a], y = L.downsets[b];
      L.order[a * n + b] = (x & ~y) == 0;
      L.meet[a * n + b] = index.at(x & y);
      L.join[a * n + b] = index.at(x | y);
    }
  L.zero = 0;
  L.one = n - 1;
  for (int x = 0; x < p.points; ++x) L.irreducibles.push_back(index.at(p.below[x] | bit(x)));
  std::sort(L.irreducibles.begin(), L.irreducibles.end());
  std::vector<int> perm(p.points);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool auto_ok = true;
    for (int x = 0; x < p.points && auto_ok; ++x)
      for (int y = 0; y < p.points && auto_ok; ++y)
        if (p.leq(x, y) != p.leq(perm[x], perm[y])) auto_ok = false;
    if (!auto_ok) continue;
    std::vector<int> sigma(n);
    for (int i = 0; i < n; ++i) {
      Mask img = 0;
      for (int x = 0; x < p.points; ++x)
        if (has(L.downsets[i], x)) img |= bit(perm[x]);
      sigma[i] = index.at(img);
    }
    L.automorphisms.push_back(std::move(sigma));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return L;
}

// Posets with at most max_size downsets, one per isomorphism type.
void grow(Poset& p, int max_size, std::vector<Poset>& out, std::set<std::pair<int, std::uint64_t>>& seen) {
  const std::vector<Mask> ds = downsets_of(p);
  if (static_cast<int>(ds.size()) > max_size) return;
  if (seen.emplace(p.points, canonical_code(p)).second) out.push_back(p);
  for (Mask d : ds) {
    p.below.push_back(d);
    ++p.points;
    grow(p, max_size, out, seen);
    --p.points;
    p.below.pop_back();
  }
}

struct Tables {
  const DistributiveLattice& L;
  std::vector<Mask> irr_below;  // per element: indices into L.irreducibles lying below it

  explicit Tables(const DistributiveLattice& lat) : L(lat) {
    const int k = static_cast<int>(L.irreducibles.size());
    irr_below.assign(L.size, 0);
    for (int x = 0; x < L.size; ++x)
      for (int j = 0; j < k; ++j)
        if (L.leq(L.irreducibles[j], x)) irr_below[x] |= bit(j);
  }
};

bool lex_minimal(const std::vector<int>& table, int n, bool binary,
                 const std::vector<std::vector<int>>& autos) {
  for (std::size_t s = 1; s < autos.size(); ++s) {
    const std::vector<int>& sg = autos[s];
    std::vector<int> inv(n);
    for (int i = 0; i < n; ++i) inv[sg[i]] = i;
    const int cells = binary ? n * n : n;
    for (int c = 0; c < cells; ++c) {
      int image;
      if (binary) {
        const int a = c / n, b = c % n;
        image = sg[table[inv[a] * n + inv[b]]];
      } else {
        image = sg[table[inv[c]]];
      }
      if (image < table[c]) return false;
      if (image > table[c]) break;
    }
  }
  return true;
}

}  // namespace

std::vector<DistributiveLattice> enumerate_distributive_lattices(int max_size) {
  if (max_size > kMaxOracleLattice)
    throw std::invalid_argument("lattice enumeration is limited to 7 elements");
  std::vector<DistributiveLattice> out;
  if (max_size < 1) return out;
  std::vector<Poset> posets;
  std::set<std::pair<int, std::uint64_t>> seen;
  Poset p;
  grow(p, max_size, posets, seen);
  for (const Poset& q : posets) out.push_back(lattice_of(q));
  std::stable_sort(out.begin(), out.end(), [](const DistributiveLattice& a, const DistributiveLattice& b) {
    if (a.size != b.size) return a.size < b.size;
    return a.seed.points < b.seed.points;
  });
  return out;
}

std::size_t enumerate_operators(const DistributiveLattice& L, AlgebraClass cls, PropertySet props,
                                const AlgebraVisitor& visit) {
  const Signature sig = Signature::make(cls, props);
  props = sig.props;
  const int n = L.size;
  const int k = static_cast<int>(L.irreducibles.size());
  Tables T(L);
  const bool unary = cls == AlgebraClass::Bdo;
  std::size_t visited = 0;
  bool stop = false;

  FiniteAlgebra A;
  A.sig = sig;
  A.size = n;
  A.order = L.order;
  A.meet = L.meet;
  A.join = L.join;
  A.zero = L.zero;
  A.one = L.one;

  auto join_of = [&](const std::vector<int>& f, Mask xs, Mask ys) {
    int v = L.zero;
    for (Mask a = xs; a; a &= a - 1) {
      const int i = __builtin_ctzll(a);
      if (unary) {
        v = L.join[v * n + f[i]];
        continue;
      }
      for (Mask b = ys; b; b &= b - 1) v = L.join[v * n + f[i * k + __builtin_ctzll(b)]];
    }
    return v;
  };

  auto finish = [&](const std::vector<int>& f) {
    if (unary) {
      A.diamond.assign(n, 0);
      for (int x = 0; x < n; ++x) A.diamond[x] = join_of(f, T.irr_below[x], 0);
      if (!lex_minimal(A.diamond, n, false, L.automorphisms)) return;
    } else {
      A.prod.assign(n * n, 0);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) A.prod[x * n + y] = join_of(f, T.irr_below[x], T.irr_below[y]);
      if (!lex_minimal(A.prod, n, true, L.automorphisms)) return;
      if (sig.has_residuals()) {
        A.under.assign(n * n, L.zero);
        A.over.assign(n * n, L.zero);
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
              if (L.leq(A.prod[x * n + y], z)) {
                A.under[x * n + z] = L.join[A.under[x * n + z] * n + y];
                A.over[z * n + y] = L.join[A.over[z * n + y] * n + x];
              }
      }
      A.unit = -1;
      if (sig.has_unit()) {
        for (int e = 0; e < n && A.unit < 0; ++e) {
          bool ok = true;
          for (int x = 0; x < n && ok; ++x)
            ok = A.prod[x * n + e] == x && A.prod[e * n + x] == x;
          if (ok) A.unit = e;
        }
        if (A.unit < 0) return;
      }
      if (props.has(PropertySet::kCommutative))
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < x; ++y)
            if (A.prod[x * n + y] != A.prod[y * n + x]) return;
    }
    ++visited;
    if (!visit(A)) stop = true;
  };

  if (unary) {
    std::vector<int> f(k, 0);
    auto rec = [&](auto& self, int i) -> void {
      if (stop) return;
      if (i == k) return finish(f);
      int lb = L.zero;
      for (int j = 0; j < i; ++j)
        if (L.leq(L.irreducibles[j], L.irreducibles[i])) lb = L.join[lb * n + f[j]];
      for (int v = 0; v < n; ++v)
        if (L.leq(lb, v)) {
          f[i] = v;
          self(self, i + 1);
        }
    };
    rec(rec, 0);
    return visited;
  }

  // Monotone assignment on pairs of irreducibles, in lexicographic order,
  // which is a linear extension of the product order.
  std::vector<int> f(k * k, 0);
  auto rec = [&](auto& self, int cell) -> void {
    if (stop) return;
    if (cell == k * k) return finish(f);
    const int i = cell / k, j = cell % k;
    const int ji = L.irreducibles[i], jj = L.irreducibles[j];
    if (props.has(PropertySet::kCommutative) && j < i) {
      const int v = f[j * k + i];
      for (int i2 = 0; i2 <= i; ++i2)
        for (int j2 = 0; j2 <= j; ++j2)
          if ((i2 != i || j2 != j) && L.leq(L.irreducibles[i2], ji) && L.leq(L.irreducibles[j2], jj) &&
              !L.leq(f[i2 * k + j2], v))
            return;
      f[cell] = v;
      return self(self, cell + 1);
    }
    int lb = L.zero;
    for (int i2 = 0; i2 <= i; ++i2)
      for (int j2 = 0; j2 <= j; ++j2)
        if ((i2 != i || j2 != j) && L.leq(L.irreducibles[i2], ji) && L.leq(L.irreducibles[j2], jj))
          lb = L.join[lb * n + f[i2 * k + j2]];
    if (props.has(PropertySet::kSquareIncreasing) && i == j) lb = L.join[lb * n + ji];
    const int ub = props.has(PropertySet::kDecreasing) ? L.meet[ji * n + jj] : L.one;
    for (int v = 0; v < n; ++v)
      if (L.leq(lb, v) && L.leq(v, ub)) {
        f[cell] = v;
        self(self, cell + 1);
        if (stop) return;
      }
  };
  rec(rec, 0);
  return visited;
}

std::size_t enumerate_algebras(int max_size, AlgebraClass cls, PropertySet props,
                               const AlgebraVisitor& visit) {
  std::size_t total = 0;
  bool stop = false;
  for (const DistributiveLattice& L : enumerate_distributive_lattices(max_size)) {
    total += enumerate_operators(L, cls, props, [&](const FiniteAlgebra& a) {
      if (!visit(a)) {
        stop = true;
        return false;
      }
      return true;
    });
    if (stop) break;
  }
  return total;
}

namespace {

// Straight-line evaluator for one formula over total algebras.
struct Program {
  struct Step {
    Op op;
    int lhs, rhs, var;
  };
  std::vector<Step> steps;
  std::vector<std::string> vars;
  struct Node {
    FKind kind;
    int a, b;
  };
  std::vector<Node> nodes;
  int root = -1;

  explicit Program(const Formula& f) {
    const TermDag& dag = f.terms();
    std::map<TermId, int> slot;
    std::map<std::uint32_t, int> var_slot;
    for (TermId t : f.used_terms()) {
      const TermNode& tn = dag.node(t);
      Step s{tn.op, -1, -1, -1};
      if (tn.op == Op::Var) {
        auto [it, fresh] = var_slot.emplace(tn.var, static_cast<int>(vars.size()));
        if (fresh) vars.push_back(dag.var_name(tn.var));
        s.var = it->second;
      } else {
        if (tn.lhs != kNoId) s.lhs = slot.at(tn.lhs);
        if (tn.rhs != kNoId) s.rhs = slot.at(tn.rhs);
      }
      slot[t] = static_cast<int>(steps.size());
      steps.push_back(s);
    }
    if (f.root() == kNoId) return;
    std::map<FormulaId, int> fslot;
    auto build = [&](auto& self, FormulaId id) -> int {
      if (auto it = fslot.find(id); it != fslot.end()) return it->second;
      const FNode& fn = f.fnode(id);
      Node node{fn.kind, -1, -1};
      switch (fn.kind) {
        case FKind::Eq:
        case FKind::Leq:
          node.a = slot.at(fn.a);
          node.b = slot.at(fn.b);
          break;
        case FKind::Not: node.a = self(self, fn.a); break;
        default:
          node.a = self(self, fn.a);
          node.b = self(self, fn.b);
      }
      nodes.push_back(node);
      return fslot[id] = static_cast<int>(nodes.size()) - 1;
    };
    root = build(build, f.root());
  }

  bool run(const FiniteAlgebra& A, const std::vector<int>& val, std::vector<int>& scratch) const {
    scratch.resize(steps.size());
    const int n = A.size;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const Step& s = steps[i];
      int r = 0;
      switch (s.op) {
        case Op::Var: r = val[s.var]; break;
        case Op::Zero: r = A.zero; break;
        case Op::One: r = A.one; break;
        case Op::Unit: r = A.unit; break;
        case Op::Meet: r = A.meet[scratch[s.lhs] * n + scratch[s.rhs]]; break;
        case Op::Join: r = A.join[scratch[s.lhs] * n + scratch[s.rhs]]; break;
        case Op::Prod: r = A.prod[scratch[s.lhs] * n + scratch[s.rhs]]; break;
        case Op::Under: r = A.under[scratch[s.lhs] * n + scratch[s.rhs]]; break;
        case Op::Over: r = A.over[scratch[s.lhs] * n + scratch[s.rhs]]; break;
        case Op::Diamond: r = A.diamond[scratch[s.lhs]]; break;
      }
      scratch[i] = r;
    }
    if (root < 0) return true;
    return truth(A, scratch, root);
  }

  bool truth(const FiniteAlgebra& A, const std::vector<int>& v, int id) const {
    const Node& nd = nodes[id];
    switch (nd.kind) {
      case FKind::Eq: return v[nd.a] == v[nd.b];
      case FKind::Leq: return A.leq(v[nd.a], v[nd.b]);
      case FKind::Not: return !truth(A, v, nd.a);
      case FKind::And: return truth(A, v, nd.a) && truth(A, v, nd.b);
      case FKind::Or: return truth(A, v, nd.a) || truth(A, v, nd.b);
    }
    return false;
  }

  std::optional<Valuation> search(const FiniteAlgebra& A, std::vector<int>& scratch) const {
    const int m = static_cast<int>(vars.size());
    std::vector<int> val(m, 0);
    while (true) {
      if (run(A, val, scratch)) {
        Valuation out;
        for (int i = 0; i < m; ++i) out[vars[i]] = val[i];
        return out;
      }
      int i = 0;
      while (i < m && ++val[i] == A.size) val[i++] = 0;
      if (i == m) return std::nullopt;
    }
  }
};

}  // namespace

std::vector<BruteForceResult> brute_force_sat_batch(const std::vector<const Formula*>& formulas,
                                                    int max_size) {
  std::vector<BruteForceResult> out(formulas.size());
  if (formulas.empty()) return out;
  const Signature sig = formulas.front()->signature();
  for (const Formula* f : formulas)
    if (!(f->signature() == sig)) throw std::invalid_argument("batch formulas must share a signature");
  std::vector<Program> programs;
  for (const Formula* f : formulas) programs.emplace_back(*f);
  std::vector<char> open(formulas.size(), 1);
  std::size_t remaining = formulas.size();
  std::vector<int> scratch;
  enumerate_algebras(max_size, sig.cls, sig.props, [&](const FiniteAlgebra& A) {
    for (std::size_t i = 0; i < programs.size(); ++i) {
      if (!open[i]) continue;
      ++out[i].algebras_checked;
      if (auto v = programs[i].search(A, scratch)) {
        out[i].witness = OracleWitness{A, std::move(*v)};
        open[i] = 0;
        --remaining;
      }
    }
    return remaining > 0;
  });
  return out;
}

BruteForceResult brute_force_sat(const Formula& f, int max_size) {
  return brute_force_sat_batch({&f}, max_size).front();
}

}  // namespace brdg
