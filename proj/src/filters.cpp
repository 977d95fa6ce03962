#include "brdg/filters.hpp"

#include <algorithm>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace brdg {

std::string_view to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::Prod: return "prod";
    case WitnessKind::Under: return "under";
    case WitnessKind::Over: return "over";
    case WitnessKind::UnitRight: return "unit_right";
    case WitnessKind::UnitLeft: return "unit_left";
  }
  return "?";
}

std::string_view to_string(RefusalStage s) {
  switch (s) {
    case RefusalStage::Lattice: return "lattice";
    case RefusalStage::Degenerate: return "degenerate";
    case RefusalStage::Elimination: return "elimination";
    case RefusalStage::Separation: return "separation";
  }
  return "?";
}

FilterSystem FilterSystem::build(int size, PropertySet props, std::vector<Entry> prod,
                                 std::vector<Entry> under, std::vector<Entry> over, int one,
                                 int unit) {
  if (size > kMaxCarrier) throw SizeLimitError("filter system larger than 64 elements");
  FilterSystem s;
  s.size = size;
  for (const Entry& e : prod) s.access.push_back({e.a, e.b, e.c});
  for (const Entry& e : under) s.access.push_back({e.a, e.c, e.b});
  for (const Entry& e : over) s.access.push_back({e.c, e.b, e.a});
  if (props.has(PropertySet::kDecreasing))
    for (int x = 0; x < size; ++x) {
      s.access.push_back({x, one, x});
      s.access.push_back({one, x, x});
    }
  if (props.has(PropertySet::kUnital) && unit >= 0) {
    for (int x = 0; x < size; ++x) {
      s.access.push_back({x, unit, x});
      s.access.push_back({unit, x, x});
    }
    s.unit = unit;
  }
  if (props.has(PropertySet::kCommutative)) {
    const std::size_t n = s.access.size();
    for (std::size_t i = 0; i < n; ++i) s.access.push_back({s.access[i].b, s.access[i].a, s.access[i].c});
  }
  std::sort(s.access.begin(), s.access.end());
  s.access.erase(std::unique(s.access.begin(), s.access.end()), s.access.end());
  s.prod = std::move(prod);
  s.under = std::move(under);
  s.over = std::move(over);
  return s;
}

FilterSystem FilterSystem::from_structure(const PartialStructure& b, PropertySet props) {
  std::vector<Entry> prod = b.entries(BinOp::Prod);
  for (auto [a, c] : b.diamond_entries()) prod.push_back({a, b.one, c});
  return build(b.size(), props, std::move(prod), b.entries(BinOp::Under), b.entries(BinOp::Over),
               b.one, b.unit);
}

bool FilterSystem::related(Mask f, Mask g, Mask h) const {
  for (const Triple& t : access)
    if (has(f, t.a) && has(g, t.b) && !has(h, t.c)) return false;
  return true;
}

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<Mask, Mask>& p) const noexcept {
    return std::hash<Mask>()(p.first * 0x9E3779B97F4A7C15ull ^ p.second);
  }
};

// Answers witness queries against one fixed family.
class Searcher {
 public:
  Searcher(const FilterSystem& sys, const FilterFamily& fam) : sys_(sys), fam_(fam) {}

  // First family index z with need ⊆ z and z ∩ forbid = ∅, or -1.
  int first(Mask need, Mask forbid) {
    auto key = std::make_pair(need, forbid);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    int found = -1;
    for (std::size_t i = 0; i < fam_.size(); ++i)
      if ((fam_[i] & need) == need && (fam_[i] & forbid) == 0) {
        found = static_cast<int>(i);
        break;
      }
    memo_.emplace(key, found);
    return found;
  }

  // Scans y over the family (y ∋ yNeed, y ∌ yForbid); for each y the second
  // witness must contain zNeed plus per-element contributions and avoid zForbid
  // plus per-element contributions.
  std::pair<int, int> pair(int yNeed, int zNeedElem, int zForbidElem,
                           const std::array<Mask, kMaxCarrier>& addNeed,
                           const std::array<Mask, kMaxCarrier>& addForbid) {
    Mask relevant = 0;
    for (int a = 0; a < sys_.size; ++a)
      if (addNeed[a] | addForbid[a]) relevant |= bit(a);
    // The demands on z only grow with y, so supersets of a failed
    // projection fail too.
    std::vector<Mask> failed;
    for (auto [proj, y] : projections(relevant, yNeed)) {
      bool dominated = false;
      for (Mask f : failed)
        if ((f & ~proj) == 0) {
          dominated = true;
          break;
        }
      if (dominated) continue;
      Mask need = zNeedElem >= 0 ? bit(zNeedElem) : 0;
      Mask forbid = zForbidElem >= 0 ? bit(zForbidElem) : 0;
      for (Mask m = proj; m; m &= m - 1) {
        const int a = __builtin_ctzll(m);
        need |= addNeed[a];
        forbid |= addForbid[a];
      }
      const int z = (need & forbid) ? -1 : first(need, forbid);
      if (z >= 0) return {y, z};
      failed.push_back(proj);
    }
    return {-1, -1};
  }

  // Distinct values of y & relevant over filters y containing yNeed, each
  // with its first index, in index order.
  const std::vector<std::pair<Mask, int>>& projections(Mask relevant, int yNeed) {
    auto key = std::make_pair(relevant, static_cast<Mask>(yNeed));
    auto it = projections_.find(key);
    if (it != projections_.end()) return it->second;
    std::vector<std::pair<Mask, int>> out;
    std::unordered_set<Mask> seen;
    for (std::size_t y = 0; y < fam_.size(); ++y) {
      const Mask f = fam_[y];
      if (!has(f, yNeed)) continue;
      if (seen.insert(f & relevant).second) out.push_back({f & relevant, static_cast<int>(y)});
    }
    return projections_.emplace(key, std::move(out)).first->second;
  }

  // Witnesses for filter x in a given role; returns false when some demand
  // fails. `out` (optional) receives first witnesses.
  bool check(int xi, std::vector<Witness>* out) {
    const Mask x = fam_[xi];
    std::array<Mask, kMaxCarrier> none{};
    std::array<Mask, kMaxCarrier> masks{};
    bool prepared = false;

    // x as the third filter: forbidden pairs from clauses whose c is missing.
    for (std::size_t i = 0; i < sys_.prod.size(); ++i) {
      const Entry& e = sys_.prod[i];
      if (!has(x, e.c)) continue;
      if (!prepared) {
        masks.fill(0);
        for (const Triple& t : sys_.access)
          if (!has(x, t.c)) masks[t.a] |= bit(t.b);
        prepared = true;
      }
      auto [y, z] = pair(e.a, e.b, -1, none, masks);
      if (y < 0) return false;
      if (out) out->push_back({WitnessKind::Prod, xi, static_cast<int>(i), y, z});
    }

    prepared = false;
    for (std::size_t i = 0; i < sys_.under.size(); ++i) {
      const Entry& e = sys_.under[i];
      if (has(x, e.c)) continue;
      if (!prepared) {
        masks.fill(0);
        for (const Triple& t : sys_.access)
          if (has(x, t.b)) masks[t.a] |= bit(t.c);
        prepared = true;
      }
      auto [y, z] = pair(e.a, -1, e.b, masks, none);
      if (y < 0) return false;
      if (out) out->push_back({WitnessKind::Under, xi, static_cast<int>(i), y, z});
    }

    prepared = false;
    for (std::size_t i = 0; i < sys_.over.size(); ++i) {
      const Entry& e = sys_.over[i];  // e.a / e.b = e.c
      if (has(x, e.c)) continue;
      if (!prepared) {
        masks.fill(0);
        for (const Triple& t : sys_.access)
          if (has(x, t.a)) masks[t.b] |= bit(t.c);
        prepared = true;
      }
      auto [y, z] = pair(e.b, -1, e.a, masks, none);
      if (y < 0) return false;
      if (out) out->push_back({WitnessKind::Over, xi, static_cast<int>(i), y, z});
    }

    if (sys_.unit >= 0) {
      Mask forbid = 0;
      for (const Triple& t : sys_.access)
        if (has(x, t.a) && !has(x, t.c)) forbid |= bit(t.b);
      const int g = first(bit(sys_.unit), forbid);
      if (g < 0) return false;
      forbid = 0;
      for (const Triple& t : sys_.access)
        if (has(x, t.b) && !has(x, t.c)) forbid |= bit(t.a);
      const int h = first(bit(sys_.unit), forbid);
      if (h < 0) return false;
      if (out) {
        out->push_back({WitnessKind::UnitRight, xi, 0, g, -1});
        out->push_back({WitnessKind::UnitLeft, xi, 0, h, -1});
      }
    }
    return true;
  }

 private:
  const FilterSystem& sys_;
  const FilterFamily& fam_;
  std::unordered_map<std::pair<Mask, Mask>, int, PairHash> memo_;
  std::unordered_map<std::pair<Mask, Mask>, std::vector<std::pair<Mask, int>>, PairHash> projections_;
};

}  // namespace

FilterFamily refine(const FilterSystem& sys, FilterFamily family, const RefineOptions& opt) {
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  const int jobs = std::max(1, opt.jobs);
  for (;;) {
    const std::size_t n = family.size();
    std::vector<char> keep(n, 1);
    auto work = [&](std::size_t lo, std::size_t hi) {
      Searcher s(sys, family);
      for (std::size_t i = lo; i < hi; ++i) keep[i] = s.check(static_cast<int>(i), nullptr);
    };
    if (jobs == 1 || n < 64) {
      work(0, n);
    } else {
      std::vector<std::thread> pool;
      const std::size_t chunk = (n + jobs - 1) / jobs;
      for (int j = 0; j < jobs; ++j) {
        const std::size_t lo = j * chunk, hi = std::min(n, lo + chunk);
        if (lo < hi) pool.emplace_back(work, lo, hi);
      }
      for (auto& t : pool) t.join();
    }
    FilterFamily next;
    for (std::size_t i = 0; i < n; ++i)
      if (keep[i]) next.push_back(family[i]);
    if (next.size() == n) return family;
    family = std::move(next);
  }
}

std::optional<std::vector<Witness>> collect_witnesses(const FilterSystem& sys,
                                                      const FilterFamily& family) {
  std::vector<Witness> out;
  Searcher s(sys, family);
  for (std::size_t i = 0; i < family.size(); ++i)
    if (!s.check(static_cast<int>(i), &out)) return std::nullopt;
  return out;
}

namespace {

// Conjunction that no prime filter may satisfy: in ⊆ f and out ∩ f = ∅.
struct Forbidden {
  Mask in = 0;
  Mask out = 0;
};

std::vector<Forbidden> filter_constraints(const PartialStructure& b, PropertySet props) {
  std::vector<Forbidden> cs;
  cs.push_back({0, bit(b.one)});
  cs.push_back({bit(b.zero), 0});
  for (int a = 0; a < b.size(); ++a)
    for (int c = 0; c < b.size(); ++c)
      if (a != c && b.leq(a, c)) cs.push_back({bit(a), bit(c)});
  for (const Entry& e : b.entries(BinOp::Meet)) cs.push_back({bit(e.a) | bit(e.b), bit(e.c)});
  for (const Entry& e : b.entries(BinOp::Join)) cs.push_back({bit(e.c), bit(e.a) | bit(e.b)});
  if (props.has(PropertySet::kSquareIncreasing)) {
    std::vector<Entry> prod = b.entries(BinOp::Prod);
    for (auto [a, c] : b.diamond_entries()) prod.push_back({a, b.one, c});
    for (const Entry& e : prod) cs.push_back({bit(e.a) | bit(e.b), bit(e.c)});
    for (const Entry& e : b.entries(BinOp::Under)) cs.push_back({bit(e.a) | bit(e.c), bit(e.b)});
    for (const Entry& e : b.entries(BinOp::Over)) cs.push_back({bit(e.c) | bit(e.b), bit(e.a)});
  }
  // A set bit in both halves can never be satisfied; drop such entries.
  cs.erase(std::remove_if(cs.begin(), cs.end(), [](const Forbidden& f) { return (f.in & f.out) != 0; }),
           cs.end());
  return cs;
}

int top_bit(Mask m) { return 63 - __builtin_clzll(m); }

}  // namespace

FilterFamily prime_filters(const PartialStructure& b, PropertySet props) {
  const int n = b.size();
  std::vector<std::vector<Forbidden>> by_last(n);
  for (const Forbidden& f : filter_constraints(b, props)) by_last[top_bit(f.in | f.out)].push_back(f);
  FilterFamily out;
  auto dfs = [&](auto& self, int i, Mask cur) -> void {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (Mask m : {cur, cur | bit(i)}) {
      bool ok = true;
      for (const Forbidden& f : by_last[i])
        if ((m & f.in) == f.in && (m & f.out) == 0) {
          ok = false;
          break;
        }
      if (ok) self(self, i + 1, m);
    }
  };
  dfs(dfs, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

bool accessibility(const PartialStructure& b, Mask f, Mask g, Mask h, PropertySet props) {
  return FilterSystem::from_structure(b, props).related(f, g, h);
}

SeparationResult separation_check(const PartialStructure& b, const FilterFamily& family) {
  for (int a = 0; a < b.size(); ++a)
    for (int c = 0; c < b.size(); ++c) {
      if (b.leq(a, c)) continue;
      bool sep = false;
      for (Mask f : family)
        if (has(f, a) && !has(f, c)) {
          sep = true;
          break;
        }
      if (!sep) return {false, a, c};
    }
  return {};
}

FilterSystem certification_system(const PartialStructure& b) {
  return FilterSystem::from_structure(b, b.signature().props);
}

CertifyResult certify(const PartialStructure& b, const CertifyOptions& opt) {
  CertifyResult res;
  if (auto rep = validate_partial_lattice(b); !rep) {
    res.refusal = Refusal{RefusalStage::Lattice, "not a partial bounded lattice: " + rep.violation};
    return res;
  }
  const Signature& sig = b.signature();
  if (b.zero == b.one) {
    if (b.size() != 1) {
      res.refusal = Refusal{RefusalStage::Degenerate, "0 = 1 in a carrier with more than one element"};
      return res;
    }
    res.certificate = Certificate{sig.cls, sig.props, {}, {}, true};
    return res;
  }
  const FilterSystem sys = certification_system(b);
  const FilterFamily f0 = prime_filters(b, sig.props);
  FilterFamily f = refine(sys, f0, RefineOptions{opt.jobs});
  if (f.empty() && !f0.empty()) {
    res.refusal = Refusal{RefusalStage::Elimination, "filter elimination emptied F"};
    return res;
  }
  if (auto sep = separation_check(b, f); !sep) {
    res.refusal = Refusal{RefusalStage::Separation,
                          "separation (D) fails: (" + b.name(sep.a) + "," + b.name(sep.b) + ")"};
    return res;
  }
  auto wit = collect_witnesses(sys, f);
  if (!wit) throw std::logic_error("fixpoint family lacks witnesses");
  res.certificate = Certificate{sig.cls, sig.props, std::move(f), std::move(*wit), false};
  return res;
}

std::vector<Triple> accessibility_table(const PartialStructure& b, const FilterFamily& family) {
  const FilterSystem sys = certification_system(b);
  std::vector<Triple> out;
  const int n = static_cast<int>(family.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (sys.related(family[i], family[j], family[k])) out.push_back({i, j, k});
  return out;
}

Certificate minimize_certificate(const PartialStructure& b, const Certificate& cert) {
  if (cert.degenerate) return cert;
  const FilterSystem sys = certification_system(b);
  FilterFamily cur = cert.family;
  for (Mask drop : cert.family) {
    if (!std::binary_search(cur.begin(), cur.end(), drop)) continue;
    FilterFamily cand;
    for (Mask m : cur)
      if (m != drop) cand.push_back(m);
    cand = refine(sys, std::move(cand));
    if (!cand.empty() && separation_check(b, cand)) cur = std::move(cand);
  }
  Certificate out = cert;
  out.family = cur;
  out.witnesses = *collect_witnesses(sys, cur);
  return out;
}

bool check_certificate(const PartialStructure& b, const Certificate& cert, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (cert.cls != b.signature().cls || !(cert.props == b.signature().props))
    return fail("certificate is for a different class");
  if (cert.degenerate) {
    if (b.size() != 1) return fail("degenerate certificate for a nontrivial carrier");
    return true;
  }
  if (cert.family.empty()) return fail("empty family");
  if (!std::is_sorted(cert.family.begin(), cert.family.end()) ||
      std::adjacent_find(cert.family.begin(), cert.family.end()) != cert.family.end())
    return fail("family not in canonical order");
  const auto cs = filter_constraints(b, b.signature().props);
  const Mask all = b.size() == 64 ? ~Mask{0} : (bit(b.size()) - 1);
  for (Mask f : cert.family) {
    if (f & ~all) return fail("filter outside the carrier");
    for (const Forbidden& c : cs)
      if ((f & c.in) == c.in && (f & c.out) == 0) return fail("member is not a prime filter");
  }
  const FilterSystem sys = certification_system(b);
  if (refine(sys, cert.family) != cert.family) return fail("family is not closed under witnesses");
  if (!separation_check(b, cert.family)) return fail("family does not separate");
  auto wit = collect_witnesses(sys, cert.family);
  if (!wit || *wit != cert.witnesses) return fail("recorded witnesses differ");
  return true;
}

}  // namespace brdg
