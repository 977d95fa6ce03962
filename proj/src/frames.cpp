#include "brdg/frames.hpp"

#include <algorithm>
#include <unordered_map>

namespace brdg {

Frame Frame::make(int points, bool binary) {
  if (points < 1) throw std::invalid_argument("a frame needs at least one point");
  if (points > kMaxCarrier) throw SizeLimitError("frames are limited to 64 points");
  Frame f;
  f.binary = binary;
  f.points = points;
  f.order.assign(static_cast<std::size_t>(points) * points, 0);
  for (int i = 0; i < points; ++i) f.order[i * points + i] = 1;
  const std::size_t cells = static_cast<std::size_t>(points) * points * (binary ? 1 : points);
  f.rel.assign(cells, 0);
  return f;
}

FrameReport check_frame(const Frame& fr, PropertySet props) {
  const int p = fr.points;
  auto fail = [](std::string m) { return FrameReport{false, std::move(m)}; };
  auto s = [](int i) { return std::to_string(i); };
  for (int x = 0; x < p; ++x) {
    if (!fr.leq(x, x)) return fail("order not reflexive at " + s(x));
    for (int y = 0; y < p; ++y) {
      if (x != y && fr.leq(x, y) && fr.leq(y, x)) return fail("order not antisymmetric");
      for (int z = 0; z < p; ++z)
        if (fr.leq(x, y) && fr.leq(y, z) && !fr.leq(x, z)) return fail("order not transitive");
    }
  }
  if (fr.binary) {
    for (int x = 0; x < p; ++x)
      for (int y = 0; y < p; ++y)
        if (fr.R(x, y))
          for (int x2 = 0; x2 < p; ++x2)
            if (fr.leq(x, x2) && !fr.R(x2, y))
              return fail("R(" + s(x) + "," + s(y) + ") not inherited by " + s(x2));
    if (!props.empty()) return fail("properties apply only to ternary frames");
    return {};
  }
  for (int x = 0; x < p; ++x)
    for (int y = 0; y < p; ++y)
      for (int z = 0; z < p; ++z) {
        if (!fr.R(x, y, z)) continue;
        const std::string t = "(" + s(x) + "," + s(y) + "," + s(z) + ")";
        for (int w = 0; w < p; ++w) {
          if (fr.leq(w, x) && !fr.R(w, y, z)) return fail("FR1 fails at " + t + " with " + s(w));
          if (fr.leq(w, y) && !fr.R(x, w, z)) return fail("FR2 fails at " + t + " with " + s(w));
          if (fr.leq(z, w) && !fr.R(x, y, w)) return fail("FR3 fails at " + t + " with " + s(w));
        }
        if (props.has(PropertySet::kCommutative) && !fr.R(y, x, z)) return fail("R1 fails at " + t);
        if (props.has(PropertySet::kDecreasing) && !(fr.leq(x, z) && fr.leq(y, z)))
          return fail("R2 fails at " + t);
      }
  if (props.has(PropertySet::kSquareIncreasing))
    for (int x = 0; x < p; ++x)
      if (!fr.R(x, x, x)) return fail("R3 fails at " + s(x));
  if (props.has(PropertySet::kUnital)) {
    if (!fr.unit_set) return fail("R4 needs a unit set");
    std::vector<char> inE(p, 0);
    for (int e : *fr.unit_set) {
      if (e < 0 || e >= p) return fail("unit set outside the frame");
      inE[e] = 1;
    }
    for (int x = 0; x < p; ++x)
      for (int y = 0; y < p; ++y)
        for (int z = 0; z < p; ++z) {
          if (!fr.R(x, y, z)) continue;
          if (inE[y] && !fr.leq(x, z)) return fail("R4 (right unit) fails");
          if (inE[x] && !fr.leq(y, z)) return fail("R4 (left unit) fails");
        }
    for (int x = 0; x < p; ++x) {
      bool right = false, left = false;
      for (int e = 0; e < p; ++e)
        if (inE[e]) {
          right = right || fr.R(x, e, x);
          left = left || fr.R(e, x, x);
        }
      if (!right || !left) return fail("R4 lacks unit witnesses at " + s(x));
    }
  }
  return {};
}

std::optional<std::vector<Mask>> enumerate_upsets(const Frame& fr, std::size_t limit) {
  const int p = fr.points;
  std::vector<Mask> up(p, 0), down(p, 0);
  for (int x = 0; x < p; ++x)
    for (int y = 0; y < p; ++y)
      if (fr.leq(x, y)) {
        up[x] |= bit(y);
        down[y] |= bit(x);
      }
  std::vector<Mask> out;
  bool overflow = false;
  auto dfs = [&](auto& self, int i, Mask in, Mask decided) -> void {
    if (overflow) return;
    if (i == p) {
      out.push_back(in);
      if (out.size() > limit) overflow = true;
      return;
    }
    const Mask prev = decided;
    decided |= bit(i);
    // out: nothing decided-in may lie below i
    if ((down[i] & in & prev) == 0) self(self, i + 1, in, decided);
    // in: nothing decided-out may lie above i
    if ((up[i] & prev & ~in) == 0) self(self, i + 1, in | bit(i), decided);
  };
  dfs(dfs, 0, 0, 0);
  if (overflow) return std::nullopt;
  std::sort(out.begin(), out.end(), [](Mask a, Mask b) {
    const int pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
    return pa != pb ? pa < pb : a < b;
  });
  return out;
}

int ComplexAlgebra::index_of(Mask m) const {
  auto it = std::lower_bound(sets.begin(), sets.end(), m, [](Mask a, Mask b) {
    const int pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
    return pa != pb ? pa < pb : a < b;
  });
  if (it == sets.end() || *it != m) return -1;
  return static_cast<int>(it - sets.begin());
}

namespace {

enum class Mode { Residuated, ProductOnly, DiamondFromProduct, Diamond };

struct SetOps {
  const Frame& fr;
  Mask all;
  std::vector<Mask> rz;  // rz[x*p+y] = {z : R(x,y,z)} or, binary, rz[x] = {y : R(x,y)}

  explicit SetOps(const Frame& f) : fr(f) {
    const int p = f.points;
    all = p == 64 ? ~Mask{0} : bit(p) - 1;
    if (f.binary) {
      rz.assign(p, 0);
      for (int x = 0; x < p; ++x)
        for (int y = 0; y < p; ++y)
          if (f.R(x, y)) rz[x] |= bit(y);
    } else {
      rz.assign(static_cast<std::size_t>(p) * p, 0);
      for (int x = 0; x < p; ++x)
        for (int y = 0; y < p; ++y)
          for (int z = 0; z < p; ++z)
            if (f.R(x, y, z)) rz[x * p + y] |= bit(z);
    }
  }
  Mask prod(Mask X, Mask Y) const {
    Mask out = 0;
    for (Mask a = X; a; a &= a - 1)
      for (Mask b = Y; b; b &= b - 1)
        out |= rz[__builtin_ctzll(a) * fr.points + __builtin_ctzll(b)];
    return out;
  }
  Mask under(Mask X, Mask Z) const {  // {y : ∀x∈X, Rz[x][y] ⊆ Z}
    Mask out = 0;
    for (int y = 0; y < fr.points; ++y) {
      bool ok = true;
      for (Mask a = X; a && ok; a &= a - 1)
        if (rz[__builtin_ctzll(a) * fr.points + y] & ~Z) ok = false;
      if (ok) out |= bit(y);
    }
    return out;
  }
  Mask over(Mask Z, Mask Y) const {  // {x : ∀y∈Y, Rz[x][y] ⊆ Z}
    Mask out = 0;
    for (int x = 0; x < fr.points; ++x) {
      bool ok = true;
      for (Mask b = Y; b && ok; b &= b - 1)
        if (rz[x * fr.points + __builtin_ctzll(b)] & ~Z) ok = false;
      if (ok) out |= bit(x);
    }
    return out;
  }
  Mask diamond(Mask X) const {
    if (!fr.binary) return prod(X, all);
    Mask out = 0;
    for (int x = 0; x < fr.points; ++x)
      if (rz[x] & X) out |= bit(x);
    return out;
  }
  Mask unit() const {
    Mask e = 0;
    if (fr.unit_set)
      for (int u : *fr.unit_set)
        for (int y = 0; y < fr.points; ++y)
          if (fr.leq(u, y)) e |= bit(y);
    return e;
  }
};

bool size_less(Mask a, Mask b) {
  const int pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
  return pa != pb ? pa < pb : a < b;
}

ComplexAlgebra tabulate(const Frame& fr, std::vector<Mask> sets, Mode mode) {
  std::sort(sets.begin(), sets.end(), size_less);
  SetOps ops(fr);
  ComplexAlgebra out;
  out.sets = sets;
  FiniteAlgebra& A = out.algebra;
  const int n = static_cast<int>(sets.size());
  A.size = n;
  A.order.assign(static_cast<std::size_t>(n) * n, 0);
  A.meet.assign(static_cast<std::size_t>(n) * n, 0);
  A.join.assign(static_cast<std::size_t>(n) * n, 0);
  auto idx = [&](Mask m) {
    int i = out.index_of(m);
    if (i < 0) throw std::invalid_argument("operation leaves the set of upsets; frame conditions fail");
    return i;
  };
  const bool has_unit = fr.unit_set.has_value() && mode == Mode::Residuated;
  switch (mode) {
    case Mode::Residuated:
      A.sig = Signature::make(has_unit ? AlgebraClass::Brdge : AlgebraClass::Brdg);
      break;
    case Mode::ProductOnly: A.sig = Signature::make(AlgebraClass::Bdbo); break;
    default: A.sig = Signature::make(AlgebraClass::Bdo); break;
  }
  const bool prod = mode == Mode::Residuated || mode == Mode::ProductOnly;
  if (prod) A.prod.assign(static_cast<std::size_t>(n) * n, 0);
  if (mode == Mode::Residuated) {
    A.under.assign(static_cast<std::size_t>(n) * n, 0);
    A.over.assign(static_cast<std::size_t>(n) * n, 0);
  }
  if (!prod) A.diamond.assign(n, 0);
  for (int a = 0; a < n; ++a) {
    if (!prod) A.diamond[a] = idx(ops.diamond(sets[a]));
    for (int b = 0; b < n; ++b) {
      const std::size_t k = static_cast<std::size_t>(a) * n + b;
      A.order[k] = (sets[a] & ~sets[b]) == 0;
      A.meet[k] = idx(sets[a] & sets[b]);
      A.join[k] = idx(sets[a] | sets[b]);
      if (prod) A.prod[k] = idx(ops.prod(sets[a], sets[b]));
      if (mode == Mode::Residuated) {
        A.under[k] = idx(ops.under(sets[a], sets[b]));
        A.over[k] = idx(ops.over(sets[a], sets[b]));
      }
    }
  }
  A.zero = idx(0);
  A.one = idx(ops.all);
  if (has_unit) A.unit = idx(ops.unit());
  return out;
}

Mode default_mode(const Frame& fr) { return fr.binary ? Mode::Diamond : Mode::Residuated; }

ComplexAlgebra generate(const Frame& fr, const std::vector<Mask>& gens, std::size_t cap, Mode mode) {
  SetOps ops(fr);
  std::vector<Mask> sets;
  std::unordered_map<Mask, int> seen;
  auto add = [&](Mask m) {
    if (seen.emplace(m, 0).second) {
      sets.push_back(m);
      if (sets.size() > cap)
        throw SizeLimitError("generated subalgebra exceeds " + std::to_string(cap) + " elements");
    }
  };
  add(0);
  add(ops.all);
  if (fr.unit_set && mode == Mode::Residuated) add(ops.unit());
  for (Mask g : gens) add(g);
  // Saturate: every pair (i, j) with max(i, j) >= done has to be processed.
  std::size_t done = 0;
  while (done < sets.size()) {
    const std::size_t hi = sets.size();
    for (std::size_t i = 0; i < hi; ++i) {
      for (std::size_t j = (i < done ? done : 0); j < hi; ++j) {
        const Mask a = sets[i], b = sets[j];
        add(a & b);
        add(a | b);
        switch (mode) {
          case Mode::Residuated:
            add(ops.prod(a, b));
            add(ops.prod(b, a));
            add(ops.under(a, b));
            add(ops.under(b, a));
            add(ops.over(a, b));
            add(ops.over(b, a));
            break;
          case Mode::ProductOnly:
            add(ops.prod(a, b));
            add(ops.prod(b, a));
            break;
          default: break;
        }
      }
      if (i >= done && (mode == Mode::Diamond || mode == Mode::DiamondFromProduct))
        add(ops.diamond(sets[i]));
    }
    done = hi;
  }
  return tabulate(fr, std::move(sets), mode);
}

}  // namespace

ComplexAlgebra complex_algebra(const Frame& frame, std::size_t max_elements) {
  auto ups = enumerate_upsets(frame, max_elements);
  if (!ups)
    throw SizeLimitError("complex algebra has more than " + std::to_string(max_elements) + " elements");
  return tabulate(frame, std::move(*ups), default_mode(frame));
}

ComplexAlgebra complex_subalgebra(const Frame& frame, const std::vector<Mask>& generators,
                                  std::size_t max_elements) {
  return generate(frame, generators, max_elements, default_mode(frame));
}

std::vector<Mask> algebra_prime_filters(const FiniteAlgebra& a) {
  if (a.size > kMaxCarrier) throw SizeLimitError("algebra too large for mask-encoded filters");
  std::vector<Mask> out;
  for (int j = 0; j < a.size; ++j) {
    if (j == a.zero) continue;
    bool irreducible = true;
    for (int x = 0; x < a.size && irreducible; ++x)
      for (int y = 0; y < a.size; ++y)
        if (a.join[x * a.size + y] == j && x != j && y != j) {
          irreducible = false;
          break;
        }
    if (!irreducible) continue;
    Mask f = 0;
    for (int x = 0; x < a.size; ++x)
      if (a.leq(j, x)) f |= bit(x);
    out.push_back(f);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Mask> algebra_prime_filters_exhaustive(const FiniteAlgebra& a) {
  if (a.size > 20) throw SizeLimitError("exhaustive filter search limited to 20 elements");
  std::vector<Mask> out;
  const int n = a.size;
  for (Mask f = 0; f < bit(n); ++f) {
    if (!has(f, a.one) || has(f, a.zero)) continue;
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      for (int y = 0; y < n && ok; ++y) {
        if (has(f, x) && a.leq(x, y) && !has(f, y)) ok = false;
        if (has(f, x) && has(f, y) && !has(f, a.meet[x * n + y])) ok = false;
        if (has(f, a.join[x * n + y]) && !has(f, x) && !has(f, y)) ok = false;
      }
    if (ok) out.push_back(f);
  }
  return out;
}

Frame canonical_frame(const FiniteAlgebra& a, RelationVariant variant) {
  const std::vector<Mask> P = algebra_prime_filters(a);
  const int p = static_cast<int>(P.size());
  if (p == 0) throw std::invalid_argument("the one-element algebra has no prime filters");
  const bool binary = a.sig.cls == AlgebraClass::Bdo;
  Frame fr = Frame::make(p, binary);
  const int n = a.size;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) fr.order[i * p + j] = (P[i] & ~P[j]) == 0;
  auto members = [&](Mask m) {
    std::vector<int> v;
    for (int x = 0; x < n; ++x)
      if (has(m, x)) v.push_back(x);
    return v;
  };
  if (binary) {
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) {
        bool r = true;
        for (int x : members(P[j]))
          if (!has(P[i], a.diamond[x])) r = false;
        fr.set_R(i, j, r);
      }
    return fr;
  }
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      for (int k = 0; k < p; ++k) {
        bool r = true;
        for (int x = 0; x < n && r; ++x)
          for (int y = 0; y < n && r; ++y) {
            switch (variant) {
              case RelationVariant::Product:
                if (has(P[i], x) && has(P[j], y) && !has(P[k], a.prod[x * n + y])) r = false;
                break;
              case RelationVariant::Under:
                if (has(P[i], x) && has(P[j], a.under[x * n + y]) && !has(P[k], y)) r = false;
                break;
              case RelationVariant::Over:  // y/x in F, x in G => y in H
                if (has(P[i], a.over[y * n + x]) && has(P[j], x) && !has(P[k], y)) r = false;
                break;
            }
          }
        fr.set_R(i, j, k, r);
      }
  if (a.sig.cls == AlgebraClass::Brdge) {
    std::vector<int> E;
    for (int i = 0; i < p; ++i)
      if (has(P[i], a.unit)) E.push_back(i);
    fr.unit_set = E;
  }
  return fr;
}

EmbeddingReport verify_canonical_embedding(const FiniteAlgebra& a) {
  auto fail = [](std::string m) { return EmbeddingReport{false, std::move(m)}; };
  if (a.size == 1) return {};
  const std::vector<Mask> P = algebra_prime_filters(a);
  Frame fr = canonical_frame(a);
  ComplexAlgebra ca = complex_algebra(fr, 1u << 16);
  const int n = a.size;
  std::vector<int> mu(n);
  for (int x = 0; x < n; ++x) {
    Mask m = 0;
    for (std::size_t i = 0; i < P.size(); ++i)
      if (has(P[i], x)) m |= bit(static_cast<int>(i));
    mu[x] = ca.index_of(m);
    if (mu[x] < 0) return fail("image of " + std::to_string(x) + " is not an upset");
  }
  const FiniteAlgebra& C = ca.algebra;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x != y && mu[x] == mu[y]) return fail("mu is not injective");
      if (a.leq(x, y) != C.leq(mu[x], mu[y])) return fail("mu does not preserve and reflect order");
    }
  if (mu[a.zero] != C.zero || mu[a.one] != C.one) return fail("mu does not preserve the bounds");
  const int m = C.size;
  for (int x = 0; x < n; ++x) {
    if (a.sig.cls == AlgebraClass::Bdo) {
      if (mu[a.diamond[x]] != C.diamond[mu[x]]) return fail("mu does not commute with <>");
      continue;
    }
    for (int y = 0; y < n; ++y) {
      const int k = x * n + y, km = mu[x] * m + mu[y];
      if (mu[a.meet[k]] != C.meet[km] || mu[a.join[k]] != C.join[km])
        return fail("mu does not commute with the lattice operations");
      if (mu[a.prod[k]] != C.prod[km]) return fail("mu does not commute with *");
      if (!a.under.empty() && (mu[a.under[k]] != C.under[km] || mu[a.over[k]] != C.over[km]))
        return fail("mu does not commute with the residuals");
    }
  }
  if (a.sig.cls == AlgebraClass::Brdge && mu[a.unit] != C.unit) return fail("mu does not preserve e");
  return {};
}

Completion completion(const PartialStructure& b, const Certificate& cert, std::size_t max_elements) {
  std::string why;
  if (!check_certificate(b, cert, &why)) throw std::invalid_argument("stale certificate: " + why);
  const Signature sig = b.signature();
  Completion out;
  if (cert.degenerate) {
    FiniteAlgebra& A = out.algebra;
    A.sig = sig;
    A.size = 1;
    A.order = {1};
    A.meet = A.join = {0};
    if (sig.cls == AlgebraClass::Bdo) A.diamond = {0};
    if (sig.cls != AlgebraClass::Bdo) A.prod = {0};
    if (sig.has_residuals()) A.under = A.over = {0};
    if (sig.has_unit()) A.unit = 0;
    out.mu = {0};
    out.frame = Frame::make(1, false);
    out.sets = {0};
    return out;
  }
  const FilterFamily& F = cert.family;
  const int p = static_cast<int>(F.size());
  if (p > kMaxCompletionFilters)
    throw SizeLimitError("completion refuses families of more than 20 filters (got " +
                         std::to_string(p) + ")");
  const FilterSystem sys = certification_system(b);
  Frame fr = Frame::make(p, false);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      fr.order[i * p + j] = (F[i] & ~F[j]) == 0;
      for (int k = 0; k < p; ++k) fr.set_R(i, j, k, sys.related(F[i], F[j], F[k]));
    }
  if (sig.has_unit()) {
    std::vector<int> E;
    for (int i = 0; i < p; ++i)
      if (has(F[i], b.unit)) E.push_back(i);
    fr.unit_set = E;
  }
  std::vector<Mask> image(b.size(), 0);
  for (int x = 0; x < b.size(); ++x)
    for (int i = 0; i < p; ++i)
      if (has(F[i], x)) image[x] |= bit(i);

  const Mode mode = sig.cls == AlgebraClass::Bdo    ? Mode::DiamondFromProduct
                    : sig.cls == AlgebraClass::Bdbo ? Mode::ProductOnly
                                                    : Mode::Residuated;
  ComplexAlgebra ca;
  if (auto ups = enumerate_upsets(fr, max_elements)) {
    ca = tabulate(fr, std::move(*ups), mode);
  } else {
    ca = generate(fr, image, max_elements, mode);
    out.generated = true;
  }
  out.algebra = std::move(ca.algebra);
  out.algebra.sig = sig;
  out.sets = std::move(ca.sets);
  out.frame = std::move(fr);
  out.mu.resize(b.size());
  for (int x = 0; x < b.size(); ++x) {
    auto it = std::lower_bound(out.sets.begin(), out.sets.end(), image[x], size_less);
    out.mu[x] = static_cast<int>(it - out.sets.begin());
  }
  return out;
}

EmbeddingReport verify_embedding(const PartialStructure& b, const Completion& c) {
  auto fail = [&](std::string m) { return EmbeddingReport{false, std::move(m)}; };
  const FiniteAlgebra& A = c.algebra;
  const int n = b.size();
  if (static_cast<int>(c.mu.size()) != n) return fail("mu has the wrong length");
  for (int x = 0; x < n; ++x)
    if (c.mu[x] < 0 || c.mu[x] >= A.size) return fail("mu leaves the algebra");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x != y && c.mu[x] == c.mu[y]) return fail("mu is not injective on " + b.name(x) + "," + b.name(y));
      if (b.leq(x, y) != A.leq(c.mu[x], c.mu[y]))
        return fail("mu does not preserve and reflect order at (" + b.name(x) + "," + b.name(y) + ")");
    }
  if (c.mu[b.zero] != A.zero) return fail("mu(0) is not the bottom");
  if (c.mu[b.one] != A.one) return fail("mu(1) is not the top");
  if (b.signature().has_unit() && c.mu[b.unit] != A.unit) return fail("mu(e) is not the unit");
  for (BinOp o : kBinOps)
    for (const Entry& e : b.entries(o)) {
      const int got = A.apply(to_op(o), c.mu[e.a], c.mu[e.b]);
      if (got != c.mu[e.c])
        return fail("mu does not commute with " + std::string(bin_op_name(o)) + " at (" + b.name(e.a) +
                    "," + b.name(e.b) + ")");
    }
  for (auto [a, r] : b.diamond_entries())
    if (A.apply(Op::Diamond, c.mu[a]) != c.mu[r]) return fail("mu does not commute with <> at " + b.name(a));
  return {};
}

}  // namespace brdg
