#include "brdg/tiling.hpp"

#include "brdg/frames.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>
#include <unordered_map>

namespace brdg {

// ------------------------------------------------------------- instance

void validate_instance(const TilingInstance& t) {
  if (t.colors < 1) throw TilingError("colors must be positive");
  if (t.tiles.size() < 2) throw TilingError("need at least the boundary tile and the winning tile");
  for (std::size_t i = 0; i < t.tiles.size(); ++i) {
    const Tile& x = t.tiles[i];
    for (int c : {x.left, x.right, x.up, x.down})
      if (c < 0 || c >= t.colors)
        throw TilingError("tile " + std::to_string(i) + " uses color " + std::to_string(c) + " outside 0.." +
                          std::to_string(t.colors - 1));
  }
  const Tile& b = t.tiles[0];
  if (b.left != b.right || b.left != b.up || b.left != b.down)
    throw TilingError("tile 0 must have four equal colors");
  if (t.n < 1) throw TilingError("n must be at least 1");
  if (static_cast<int>(t.first_row.size()) != t.n)
    throw TilingError("firstRow must list exactly n tiles");
  for (int u : t.first_row)
    if (u < 0 || u > t.s())
      throw TilingError("firstRow entries must lie in 0.." + std::to_string(t.s()) + ", got " + std::to_string(u));
  round_bound(t);
}

TilingInstance tiling_from_json(const Json& j) {
  TilingInstance t;
  try {
    t.colors = j.at("colors").get<int>();
    for (const auto& x : j.at("tiles"))
      t.tiles.push_back({x.at("left").get<int>(), x.at("right").get<int>(), x.at("up").get<int>(),
                         x.at("down").get<int>()});
    t.n = j.at("n").get<int>();
    t.first_row = j.at("firstRow").get<std::vector<int>>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("tiling instance: ") + e.what());
  }
  validate_instance(t);
  return t;
}

Json tiling_to_json(const TilingInstance& t) {
  Json tiles = Json::array();
  for (const Tile& x : t.tiles)
    tiles.push_back(Json{{"left", x.left}, {"right", x.right}, {"up", x.up}, {"down", x.down}});
  return Json{{"colors", t.colors}, {"tiles", tiles}, {"n", t.n}, {"firstRow", t.first_row}};
}

std::uint64_t round_bound(const TilingInstance& t) {
  const std::uint64_t base = static_cast<std::uint64_t>(t.s()) + 2;
  std::uint64_t n = 1;
  for (int i = 0; i < t.n + 2; ++i) {
    if (n > (std::uint64_t{1} << 62) / base) throw TilingError("(s+2)^(n+2) overflows");
    n *= base;
  }
  return n;
}

int counter_bits(const TilingInstance& t) {
  const std::uint64_t n = round_bound(t);
  int m = 0;
  while ((std::uint64_t{1} << m) < n) ++m;
  return m;
}

// ---------------------------------------------------------------- modal

using MF = ModalFormula;

MF MF::top() { return MF{}; }
MF MF::bottom() { return MF{Kind::Or, {}, {}}; }
MF MF::var(std::string name) { return MF{Kind::Var, std::move(name), {}}; }
MF MF::neg(MF f) { return MF{Kind::Not, {}, {std::move(f)}}; }
MF MF::conj(std::vector<MF> fs) { return MF{Kind::And, {}, std::move(fs)}; }
MF MF::disj(std::vector<MF> fs) { return MF{Kind::Or, {}, std::move(fs)}; }
MF MF::dia(MF f) { return MF{Kind::Diamond, {}, {std::move(f)}}; }
MF MF::box(MF f) { return neg(dia(neg(std::move(f)))); }
MF MF::global(MF f) { return MF{Kind::Global, {}, {std::move(f)}}; }

namespace {

bool is_box(const MF& f) {
  return f.kind == MF::Kind::Not && f.args[0].kind == MF::Kind::Diamond &&
         f.args[0].args[0].kind == MF::Kind::Not;
}

void print_into(const MF& f, std::string& out) {
  switch (f.kind) {
    case MF::Kind::Top: out += "true"; return;
    case MF::Kind::Var: out += f.name; return;
    case MF::Kind::Not:
      if (is_box(f)) {
        out += "[]";
        print_into(f.args[0].args[0].args[0], out);
        return;
      }
      out += "~";
      print_into(f.args[0], out);
      return;
    case MF::Kind::And:
    case MF::Kind::Or: {
      if (f.args.empty()) {
        out += f.kind == MF::Kind::And ? "true" : "false";
        return;
      }
      out += "(";
      for (std::size_t i = 0; i < f.args.size(); ++i) {
        if (i) out += f.kind == MF::Kind::And ? " & " : " | ";
        print_into(f.args[i], out);
      }
      out += ")";
      return;
    }
    case MF::Kind::Diamond: out += "<>"; print_into(f.args[0], out); return;
    case MF::Kind::Global: out += "[A]"; print_into(f.args[0], out); return;
  }
}

void collect_vars(const MF& f, std::set<std::string>& out) {
  if (f.kind == MF::Kind::Var) out.insert(f.name);
  for (const MF& g : f.args) collect_vars(g, out);
}

}  // namespace

std::string print_modal(const MF& f) {
  std::string out;
  print_into(f, out);
  return out;
}

std::vector<std::string> modal_variables(const MF& f) {
  std::set<std::string> vars;
  collect_vars(f, vars);
  return {vars.begin(), vars.end()};
}

std::string position_var(int i) { return "p" + std::to_string(i); }
std::string column_var(int i, int u) { return "c" + std::to_string(i) + "t" + std::to_string(u); }
std::string counter_var(int j) { return "q" + std::to_string(j); }

std::vector<std::string> variable_inventory(const TilingInstance& t) {
  validate_instance(t);
  std::vector<std::string> out;
  for (int i = 1; i <= t.n; ++i) out.push_back(position_var(i));
  for (int i = 0; i <= t.n + 1; ++i)
    for (int u = 0; u <= t.s() + 1; ++u) out.push_back(column_var(i, u));
  out.push_back("e");
  out.push_back("w");
  for (int j = 1; j <= counter_bits(t); ++j) out.push_back(counter_var(j));
  return out;
}

namespace {

bool matches(const TilingInstance& t, int left, int below, int tile) {
  return t.tiles[left].right == t.tiles[tile].left && t.tiles[below].up == t.tiles[tile].down;
}

bool fits_right_edge(const TilingInstance& t, int tile) {
  return t.tiles[tile].right == t.tiles[0].left;
}

}  // namespace

MF build_modal_formula(const TilingInstance& t) {
  validate_instance(t);
  const int n = t.n, top = t.s() + 1, m = counter_bits(t);
  auto p = [](int i) { return MF::var(position_var(i)); };
  auto c = [](int i, int u) { return MF::var(column_var(i, u)); };
  auto q = [](int j) { return MF::var(counter_var(j)); };
  const MF e = MF::var("e"), w = MF::var("w");
  auto keep = [](const MF& x) {
    return std::vector<MF>{MF::disj({MF::neg(x), MF::box(x)}), MF::disj({x, MF::box(MF::neg(x))})};
  };

  std::vector<MF> init{e, p(1), c(0, 0)};
  for (int i = 1; i <= n; ++i) init.push_back(c(i, t.first_row[i - 1]));
  init.push_back(c(n + 1, 0));

  std::vector<MF> some_p, pairs;
  for (int i = 1; i <= n; ++i) {
    some_p.push_back(p(i));
    for (int j = 1; j <= n; ++j)
      if (j != i) pairs.push_back(MF::disj({MF::neg(p(i)), MF::neg(p(j))}));
  }
  MF r1 = MF::global(MF::conj({MF::disj(some_p), MF::conj(pairs)}));

  std::vector<MF> some_tile, one_tile;
  for (int i = 0; i <= n + 1; ++i) {
    std::vector<MF> any;
    for (int u = 0; u <= top; ++u) {
      any.push_back(c(i, u));
      for (int v = 0; v <= top; ++v)
        if (v != u) one_tile.push_back(MF::disj({MF::neg(c(i, u)), MF::neg(c(i, v))}));
    }
    some_tile.push_back(MF::disj(any));
  }
  MF r2 = MF::conj({MF::global(MF::conj(some_tile)), MF::global(MF::conj(one_tile))});

  MF r3 = MF::global(MF::conj({c(0, 0), c(n + 1, 0)}));

  std::vector<MF> succ;
  for (int i = 1; i <= n; ++i) succ.push_back(MF::disj({MF::neg(p(i)), MF::box(p(i % n + 1))}));
  MF r4 = MF::global(MF::conj(succ));

  std::vector<MF> frozen;
  for (int i = 0; i <= n + 1; ++i)
    for (int u = 0; u <= top; ++u) {
      MF stay = MF::conj(keep(c(i, u)));
      frozen.push_back(i >= 1 && i <= n ? MF::disj({p(i), stay}) : stay);
    }
  MF r5 = MF::global(MF::conj(frozen));

  MF r6 = MF::global(MF::conj({MF::disj({MF::neg(e), MF::box(MF::neg(e))}), MF::disj({e, MF::box(e)})}));

  std::vector<MF> placed;
  for (int i = 1; i <= n; ++i)
    for (int left = 0; left <= top; ++left)
      for (int below = 0; below <= top; ++below) {
        std::vector<MF> allowed;
        for (int u = 1; u <= top; ++u)
          if (matches(t, left, below, u)) allowed.push_back(c(i, u));
        placed.push_back(MF::disj({MF::neg(MF::conj({p(i), c(i - 1, left), c(i, below)})),
                                   MF::box(MF::disj(allowed))}));
      }
  MF r7 = MF::global(MF::conj(placed));

  std::vector<MF> edge;
  for (int u = 1; u <= top; ++u)
    if (fits_right_edge(t, u)) edge.push_back(c(n, u));
  MF r8 = MF::global(MF::disj({MF::neg(p(n)), MF::box(MF::disj(edge))}));

  auto abelard = [&](int i) {
    std::vector<MF> out;
    for (int below = 0; below <= top; ++below)
      for (int left = 0; left <= top; ++left) {
        std::vector<MF> every;
        for (int u = 1; u <= top; ++u)
          if (matches(t, left, below, u) && (i < n || fits_right_edge(t, u))) every.push_back(MF::dia(c(i, u)));
        out.push_back(MF::disj({MF::neg(MF::conj({MF::neg(e), p(i), c(i - 1, left), c(i, below)})),
                                MF::conj(every)}));
      }
    return out;
  };
  std::vector<MF> inner;
  for (int i = 1; i <= n - 1; ++i)
    for (MF& x : abelard(i)) inner.push_back(std::move(x));
  MF r9 = MF::conj({MF::global(MF::conj(inner)), MF::global(MF::conj(abelard(n)))});

  MF win = MF::conj({w, MF::global(MF::disj({MF::neg(w), c(1, top), MF::conj({e, MF::dia(w)}),
                                              MF::conj({MF::neg(e), MF::dia(MF::top()), MF::box(w)})}))});

  std::vector<MF> hold;
  for (int j = 2; j <= m; ++j)
    for (MF& x : keep(q(j))) hold.push_back(std::move(x));
  std::vector<MF> steps{MF::disj({q(1), MF::conj({MF::box(q(1)), MF::conj(hold)})})};
  for (int i = 1; i <= m - 1; ++i) {
    std::vector<MF> low{MF::neg(q(i + 1))};
    std::vector<MF> next{MF::box(q(i + 1))};
    for (int j = 1; j <= i; ++j) {
      low.push_back(q(j));
      next.push_back(MF::box(MF::neg(q(j))));
    }
    for (int k = i + 2; k <= m; ++k)
      for (MF& x : keep(q(k))) next.push_back(std::move(x));
    steps.push_back(MF::disj({MF::neg(MF::conj(low)), MF::conj(next)}));
  }
  std::vector<MF> f;
  std::vector<MF> not_all;
  for (int j = m; j >= 1; --j) {
    f.push_back(MF::neg(q(j)));
    not_all.push_back(MF::neg(q(j)));
  }
  not_all.push_back(MF::box(MF::neg(w)));
  f.push_back(MF::global(MF::conj(steps)));
  f.push_back(MF::global(MF::disj(not_all)));

  return MF::conj({MF::conj(init), r1, r2, r3, r4, r5, r6, r7, r8, r9, win, MF::conj(f)});
}

// --------------------------------------------------------------- kripke

std::vector<char> extension(const KripkeModel& m, const MF& f) {
  const int n = m.worlds;
  switch (f.kind) {
    case MF::Kind::Top: return std::vector<char>(n, 1);
    case MF::Kind::Var: {
      auto it = m.valuation.find(f.name);
      if (it == m.valuation.end()) throw std::invalid_argument("unknown variable " + f.name);
      return it->second;
    }
    case MF::Kind::Not: {
      std::vector<char> x = extension(m, f.args[0]);
      for (char& b : x) b = !b;
      return x;
    }
    case MF::Kind::And:
    case MF::Kind::Or: {
      const bool conj = f.kind == MF::Kind::And;
      std::vector<char> acc(n, conj);
      for (const MF& g : f.args) {
        const std::vector<char> x = extension(m, g);
        for (int i = 0; i < n; ++i) acc[i] = conj ? (acc[i] && x[i]) : (acc[i] || x[i]);
      }
      return acc;
    }
    case MF::Kind::Diamond: {
      const std::vector<char> x = extension(m, f.args[0]);
      std::vector<char> out(n, 0);
      for (int i = 0; i < n; ++i)
        for (int j : m.succ[i])
          if (x[j]) {
            out[i] = 1;
            break;
          }
      return out;
    }
    case MF::Kind::Global: {
      const std::vector<char> x = extension(m, f.args[0]);
      const bool all = std::all_of(x.begin(), x.end(), [](char b) { return b != 0; });
      return std::vector<char>(n, all);
    }
  }
  return {};
}

bool kripke_check(const KripkeModel& m, int world, const MF& f) {
  if (world < 0 || world >= m.worlds) throw std::out_of_range("world out of range");
  return extension(m, f)[world] != 0;
}

// ----------------------------------------------------------------- game

namespace {

/// Position: topmost tile of columns 1..n, next column, player to move.
class Game {
 public:
  explicit Game(const TilingInstance& t) : t_(t), base_(t.s() + 2) {
    validate_instance(t);
    positions_ = 2 * static_cast<std::uint64_t>(t.n);
    for (int i = 0; i < t.n; ++i) {
      if (positions_ > (std::uint64_t{1} << 40)) throw SizeLimitError("game position count overflows");
      positions_ *= base_;
    }
  }

  std::uint64_t positions() const { return positions_; }

  struct Pos {
    std::vector<int> tops;  // index 0 is column 1
    int column = 1;
    bool eloise = true;
  };

  std::uint64_t encode(const Pos& p) const {
    std::uint64_t code = 0;
    for (int i = t_.n - 1; i >= 0; --i) code = code * base_ + p.tops[i];
    return (code * t_.n + (p.column - 1)) * 2 + (p.eloise ? 1 : 0);
  }

  Pos decode(std::uint64_t code) const {
    Pos p;
    p.eloise = code % 2;
    code /= 2;
    p.column = static_cast<int>(code % t_.n) + 1;
    code /= t_.n;
    p.tops.resize(t_.n);
    for (int i = 0; i < t_.n; ++i) {
      p.tops[i] = static_cast<int>(code % base_);
      code /= base_;
    }
    return p;
  }

  Pos initial() const { return Pos{t_.first_row, 1, true}; }

  bool won(const Pos& p) const { return p.tops[0] == t_.winning(); }

  std::vector<int> moves(const Pos& p) const {
    std::vector<int> out;
    const int col = p.column;
    const int left = col == 1 ? 0 : p.tops[col - 2];
    const int below = p.tops[col - 1];
    for (int u = 1; u <= t_.winning(); ++u)
      if (matches(t_, left, below, u) && (col < t_.n || fits_right_edge(t_, u))) out.push_back(u);
    return out;
  }

  Pos play(const Pos& p, int tile) const {
    Pos q = p;
    q.tops[p.column - 1] = tile;
    q.column = p.column % t_.n + 1;
    q.eloise = !p.eloise;
    return q;
  }

 private:
  const TilingInstance& t_;
  std::uint64_t base_;
  std::uint64_t positions_ = 0;
};

/// win[d][pos] for rounds 0..cap, computed from the last round backwards.
std::vector<std::vector<char>> solve_layers(const Game& g, std::uint64_t cap, std::uint64_t max_states,
                                            bool keep_all) {
  const std::uint64_t npos = g.positions();
  if (npos > max_states || (cap + 1) > max_states / npos)
    throw SizeLimitError("game search exceeds the state budget");
  std::vector<std::vector<int>> moves(npos);
  std::vector<std::vector<std::uint64_t>> next(npos);
  std::vector<char> won(npos), eloise(npos);
  for (std::uint64_t c = 0; c < npos; ++c) {
    const Game::Pos p = g.decode(c);
    won[c] = g.won(p);
    eloise[c] = p.eloise;
    for (int u : g.moves(p)) next[c].push_back(g.encode(g.play(p, u)));
  }
  std::vector<std::vector<char>> layers;
  std::vector<char> later(npos);
  for (std::uint64_t c = 0; c < npos; ++c) later[c] = won[c];
  if (keep_all) layers.push_back(later);
  for (std::uint64_t d = cap; d-- > 0;) {
    std::vector<char> now(npos);
    for (std::uint64_t c = 0; c < npos; ++c) {
      if (won[c]) {
        now[c] = 1;
        continue;
      }
      if (next[c].empty()) continue;
      if (eloise[c])
        now[c] = std::any_of(next[c].begin(), next[c].end(), [&](std::uint64_t x) { return later[x] != 0; });
      else
        now[c] = std::all_of(next[c].begin(), next[c].end(), [&](std::uint64_t x) { return later[x] != 0; });
    }
    later = std::move(now);
    if (keep_all) layers.push_back(later);
  }
  if (keep_all) {
    std::reverse(layers.begin(), layers.end());
    return layers;
  }
  return {later};
}

}  // namespace

GameResult solve_game(const TilingInstance& t, const GameOptions& opt) {
  const Game g(t);
  const std::uint64_t cap = opt.round_cap ? opt.round_cap : round_bound(t);
  const auto layers = solve_layers(g, cap, opt.max_states, false);
  return layers[0][g.encode(g.initial())] ? GameResult::EloiseWins : GameResult::AbelardWins;
}

PointedModel strategy_model(const TilingInstance& t, const GameOptions& opt) {
  const Game g(t);
  const int m = counter_bits(t);
  if (m > 24) throw SizeLimitError("round counter too wide for an explicit model");
  const std::uint64_t last = (std::uint64_t{1} << m) - 1;
  const auto win = solve_layers(g, last, opt.max_states, true);
  if (!win[0][g.encode(g.initial())]) throw TilingError("Abelard wins this instance; there is no strategy model");

  struct Key {
    std::uint64_t pos, round;
    bool w;
    bool operator<(const Key& o) const { return std::tie(pos, round, w) < std::tie(o.pos, o.round, o.w); }
  };
  std::map<Key, int> index;
  std::vector<Key> worlds;
  std::vector<std::vector<int>> succ;
  auto world = [&](const Key& k) {
    auto [it, fresh] = index.emplace(k, static_cast<int>(worlds.size()));
    if (fresh) {
      worlds.push_back(k);
      succ.emplace_back();
    }
    return it->second;
  };
  world({g.encode(g.initial()), 0, true});
  for (std::size_t i = 0; i < worlds.size(); ++i) {
    const Key k = worlds[i];
    const Game::Pos p = g.decode(k.pos);
    const std::uint64_t round = std::min(k.round + 1, last);
    const bool done = g.won(p);
    std::vector<int> out;
    if (p.eloise) {
      if (k.w && !done) {
        bool found = false;
        for (int u : g.moves(p)) {
          const std::uint64_t c = g.encode(g.play(p, u));
          if (k.round + 1 <= last && win[k.round + 1][c]) {
            out.push_back(world({c, round, true}));
            found = true;
            break;
          }
        }
        if (!found) throw std::logic_error("strategy lost track of a winning move");
      }
    } else {
      for (int u : g.moves(p)) out.push_back(world({g.encode(g.play(p, u)), round, k.w && !done}));
      if (k.w && !done && out.empty()) throw std::logic_error("Abelard stuck at a winning position");
    }
    succ[i] = std::move(out);
  }

  PointedModel pm;
  KripkeModel& km = pm.model;
  km.worlds = static_cast<int>(worlds.size());
  km.succ = std::move(succ);
  for (const std::string& v : variable_inventory(t)) km.valuation[v].assign(km.worlds, 0);
  for (int i = 0; i < km.worlds; ++i) {
    const Key& k = worlds[i];
    const Game::Pos p = g.decode(k.pos);
    km.valuation[position_var(p.column)][i] = 1;
    km.valuation[column_var(0, 0)][i] = 1;
    km.valuation[column_var(t.n + 1, 0)][i] = 1;
    for (int c = 1; c <= t.n; ++c) km.valuation[column_var(c, p.tops[c - 1])][i] = 1;
    km.valuation["e"][i] = p.eloise;
    km.valuation["w"][i] = k.w;
    for (int j = 1; j <= m; ++j) km.valuation[counter_var(j)][i] = (k.round >> (j - 1)) & 1;
  }
  pm.root = 0;
  return pm;
}

// ------------------------------------------------------- bounded search

namespace {

struct Split {
  std::vector<MF> chi, psi;
};

bool has_kind(const MF& f, MF::Kind k) {
  if (f.kind == k) return true;
  return std::any_of(f.args.begin(), f.args.end(), [&](const MF& g) { return has_kind(g, k); });
}

void split_into(const MF& f, Split& out) {
  if (f.kind == MF::Kind::And) {
    for (const MF& g : f.args) split_into(g, out);
  } else if (f.kind == MF::Kind::Global) {
    if (has_kind(f.args[0], MF::Kind::Global)) throw TilingError("nested global box");
    out.psi.push_back(f.args[0]);
  } else {
    if (has_kind(f, MF::Kind::Global)) throw TilingError("global box below another connective");
    out.chi.push_back(f);
  }
}

void flatten_and(const MF& f, std::vector<const MF*>& out) {
  if (f.kind == MF::Kind::And) {
    for (const MF& g : f.args) flatten_and(g, out);
  } else {
    out.push_back(&f);
  }
}

int modal_depth(const MF& f) {
  int d = 0;
  for (const MF& g : f.args) d = std::max(d, modal_depth(g));
  return d + (f.kind == MF::Kind::Diamond ? 1 : 0);
}

class LabelSearch {
 public:
  LabelSearch(const MF& f, int max_worlds, std::uint64_t max_nodes)
      : max_worlds_(max_worlds), max_nodes_(max_nodes) {
    split_into(f, split_);
    for (const MF& g : split_.chi)
      if (modal_depth(g) > 1) throw TilingError("bounded search needs modal depth at most 1");
    for (const MF& g : split_.psi)
      if (modal_depth(g) > 1) throw TilingError("bounded search needs modal depth at most 1");
    vars_ = modal_variables(f);
    if (vars_.size() > 64) throw SizeLimitError("bounded search supports at most 64 variables");
    for (std::size_t i = 0; i < vars_.size(); ++i) slot_[vars_[i]] = static_cast<int>(i);
    for (const MF& g : split_.psi) {
      std::vector<const MF*> parts;
      flatten_and(g, parts);
      for (const MF* x : parts)
        if (!has_kind(*x, MF::Kind::Diamond)) base_.push_back(x);
    }
  }

  BoundedSearchResult run() {
    BoundedSearchResult res;
    res.max_worlds = max_worlds_;
    std::vector<const MF*> root_rules = base_;
    for (const MF& g : split_.chi) {
      std::vector<const MF*> parts;
      flatten_and(g, parts);
      for (const MF* x : parts)
        if (!has_kind(*x, MF::Kind::Diamond)) root_rules.push_back(x);
    }
    for (std::uint64_t root : labels(root_rules)) {
      labels_ = {root};
      succ_ = {{}};
      if (expand(0)) {
        res.model = build();
        break;
      }
    }
    res.nodes = nodes_;
    return res;
  }

 private:
  // 1 true, 0 false, -1 unknown
  int eval3(const MF& f, std::uint64_t known, std::uint64_t value) const {
    switch (f.kind) {
      case MF::Kind::Top: return 1;
      case MF::Kind::Var: {
        const int s = slot_.at(f.name);
        if (!has(known, s)) return -1;
        return has(value, s) ? 1 : 0;
      }
      case MF::Kind::Not: {
        const int x = eval3(f.args[0], known, value);
        return x < 0 ? -1 : 1 - x;
      }
      case MF::Kind::And:
      case MF::Kind::Or: {
        const int absorb = f.kind == MF::Kind::And ? 0 : 1;
        int res = 1 - absorb;
        for (const MF& g : f.args) {
          const int x = eval3(g, known, value);
          if (x == absorb) return absorb;
          if (x < 0) res = -1;
        }
        return res;
      }
      default: throw std::logic_error("modal operator in a propositional constraint");
    }
  }

  bool eval_local(const MF& f, std::uint64_t label, const std::vector<std::uint64_t>& next) const {
    switch (f.kind) {
      case MF::Kind::Top: return true;
      case MF::Kind::Var: return has(label, slot_.at(f.name));
      case MF::Kind::Not: return !eval_local(f.args[0], label, next);
      case MF::Kind::And:
        return std::all_of(f.args.begin(), f.args.end(),
                           [&](const MF& g) { return eval_local(g, label, next); });
      case MF::Kind::Or:
        return std::any_of(f.args.begin(), f.args.end(),
                           [&](const MF& g) { return eval_local(g, label, next); });
      case MF::Kind::Diamond:
        return std::any_of(next.begin(), next.end(),
                           [&](std::uint64_t y) { return eval_local(f.args[0], y, {}); });
      case MF::Kind::Global: break;
    }
    throw std::logic_error("global box in a local formula");
  }

  /// Propositional residue of f at a world with the given label; box
  /// bodies that must hold at every successor are appended to forced.
  MF residue(const MF& f, std::uint64_t label) const {
    switch (f.kind) {
      case MF::Kind::Var: return has(label, slot_.at(f.name)) ? MF::top() : MF::bottom();
      case MF::Kind::Top:
      case MF::Kind::Diamond: return f;
      case MF::Kind::Not: {
        MF x = residue(f.args[0], label);
        if (x == MF::top()) return MF::bottom();
        if (x == MF::bottom()) return MF::top();
        return MF::neg(std::move(x));
      }
      case MF::Kind::And:
      case MF::Kind::Or: {
        const bool conj = f.kind == MF::Kind::And;
        std::vector<MF> kept;
        for (const MF& g : f.args) {
          MF x = residue(g, label);
          if (x == (conj ? MF::bottom() : MF::top())) return x;
          if (x == (conj ? MF::top() : MF::bottom())) continue;
          kept.push_back(std::move(x));
        }
        if (kept.empty()) return conj ? MF::top() : MF::bottom();
        if (kept.size() == 1) return kept[0];
        return conj ? MF::conj(std::move(kept)) : MF::disj(std::move(kept));
      }
      case MF::Kind::Global: break;
    }
    throw std::logic_error("global box in a local formula");
  }

  void forced_from(const MF& r, std::vector<MF>& out) const {
    if (r.kind == MF::Kind::And && !r.args.empty()) {
      for (const MF& g : r.args) forced_from(g, out);
    } else if (r.kind == MF::Kind::Not && r.args[0].kind == MF::Kind::Diamond) {
      out.push_back(MF::neg(r.args[0].args[0]));
    }
  }

  std::vector<std::uint64_t> labels(const std::vector<const MF*>& rules) const {
    std::vector<std::uint64_t> out;
    const int nv = static_cast<int>(vars_.size());
    std::function<void(int, std::uint64_t, std::uint64_t)> go = [&](int i, std::uint64_t known,
                                                                   std::uint64_t value) {
      for (const MF* r : rules)
        if (eval3(*r, known, value) == 0) return;
      if (i == nv) {
        out.push_back(value);
        return;
      }
      go(i + 1, known | bit(i), value);
      go(i + 1, known | bit(i), value | bit(i));
    };
    go(0, 0, 0);
    return out;
  }

  const std::vector<std::uint64_t>& candidates(std::uint64_t label) {
    auto it = cand_.find(label);
    if (it != cand_.end()) return it->second;
    std::vector<MF> forced;
    for (const MF& g : split_.psi) forced_from(residue(g, label), forced);
    std::vector<const MF*> rules = base_;
    for (const MF& x : forced) rules.push_back(&x);
    return cand_[label] = labels(rules);
  }

  bool local_ok(int i, const std::vector<std::uint64_t>& next) {
    if (++nodes_ > max_nodes_) throw SizeLimitError("bounded Kripke search exceeded its node budget");
    for (const MF& g : split_.psi)
      if (!eval_local(g, labels_[i], next)) return false;
    if (i == 0)
      for (const MF& g : split_.chi)
        if (!eval_local(g, labels_[i], next)) return false;
    return true;
  }

  // Only inclusion-minimal successor choices are tried: dropping successors
  // of a world never adds obligations elsewhere.
  bool expand(int i) {
    if (i == static_cast<int>(labels_.size())) return true;
    const std::vector<std::uint64_t> cand = candidates(labels_[i]);
    std::vector<int> eligible;
    for (int j = 0; j < static_cast<int>(labels_.size()); ++j)
      if (std::binary_search(cand.begin(), cand.end(), labels_[j])) eligible.push_back(j);
    const int room = max_worlds_ - static_cast<int>(labels_.size());
    struct Choice {
      Mask sub;
      std::vector<int> pick;
    };
    std::vector<Choice> minimal;
    auto dominated = [&](Mask sub, const std::vector<int>& pick) {
      for (const Choice& c : minimal)
        if ((c.sub & ~sub) == 0 && std::includes(pick.begin(), pick.end(), c.pick.begin(), c.pick.end()))
          return true;
      return false;
    };
    const int ne = static_cast<int>(eligible.size());
    for (int total = 0; total <= ne + room; ++total)
      for (int k = std::max(0, total - ne); k <= std::min(total, room); ++k) {
        if (k > 0 && cand.empty()) break;
        std::vector<int> pick(k, 0);
        while (true) {
          for (Mask sub = 0; sub < (Mask{1} << ne); ++sub) {
            if (std::popcount(sub) != total - k || dominated(sub, pick)) continue;
            std::vector<std::uint64_t> next;
            std::vector<int> targets;
            for (int b = 0; b < ne; ++b)
              if (has(sub, b)) {
                next.push_back(labels_[eligible[b]]);
                targets.push_back(eligible[b]);
              }
            for (int x : pick) next.push_back(cand[x]);
            if (!local_ok(i, next)) continue;
            minimal.push_back({sub, pick});
            const std::size_t before = labels_.size();
            for (int x : pick) {
              targets.push_back(static_cast<int>(labels_.size()));
              labels_.push_back(cand[x]);
              succ_.emplace_back();
            }
            succ_[i] = targets;
            if (expand(i + 1)) return true;
            labels_.resize(before);
            succ_.resize(before);
            succ_[i].clear();
          }
          int pos = k - 1;
          while (pos >= 0 && pick[pos] == static_cast<int>(cand.size()) - 1) --pos;
          if (pos < 0) break;
          ++pick[pos];
          for (int r = pos + 1; r < k; ++r) pick[r] = pick[pos];
        }
      }
    return false;
  }

  PointedModel build() const {
    PointedModel pm;
    pm.model.worlds = static_cast<int>(labels_.size());
    pm.model.succ = succ_;
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      std::vector<char>& flags = pm.model.valuation[vars_[v]];
      flags.resize(labels_.size());
      for (std::size_t w = 0; w < labels_.size(); ++w) flags[w] = has(labels_[w], static_cast<int>(v));
    }
    return pm;
  }

  int max_worlds_;
  std::uint64_t max_nodes_;
  std::uint64_t nodes_ = 0;
  Split split_;
  std::vector<std::string> vars_;
  std::map<std::string, int> slot_;
  std::vector<const MF*> base_;
  std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> cand_;
  std::vector<std::uint64_t> labels_;
  std::vector<std::vector<int>> succ_;
};

}  // namespace

BoundedSearchResult bounded_search(const MF& f, int max_worlds, std::uint64_t max_nodes) {
  if (max_worlds < 1) throw std::invalid_argument("max_worlds must be positive");
  LabelSearch search(f, max_worlds, max_nodes);
  BoundedSearchResult res = search.run();
  if (res.model && !kripke_check(res.model->model, res.model->root, f))
    throw std::logic_error("bounded search produced a model that fails the check");
  return res;
}

// ---------------------------------------------------------- translation

namespace {

struct Nnf {
  enum class Kind { Top, Bot, Lit, And, Or, Dia, Box };
  Kind kind = Kind::Top;
  std::string var;
  bool negated = false;
  std::vector<Nnf> args;
};

Nnf nnf(const MF& f, bool negate) {
  switch (f.kind) {
    case MF::Kind::Top: return Nnf{negate ? Nnf::Kind::Bot : Nnf::Kind::Top, {}, false, {}};
    case MF::Kind::Var: return Nnf{Nnf::Kind::Lit, f.name, negate, {}};
    case MF::Kind::Not: return nnf(f.args[0], !negate);
    case MF::Kind::And:
    case MF::Kind::Or: {
      const bool conj = (f.kind == MF::Kind::And) != negate;
      const Nnf::Kind self = conj ? Nnf::Kind::And : Nnf::Kind::Or;
      const Nnf::Kind unit = conj ? Nnf::Kind::Top : Nnf::Kind::Bot;
      const Nnf::Kind zero = conj ? Nnf::Kind::Bot : Nnf::Kind::Top;
      Nnf out{self, {}, false, {}};
      for (const MF& g : f.args) {
        Nnf x = nnf(g, negate);
        if (x.kind == unit) continue;
        if (x.kind == zero) return Nnf{zero, {}, false, {}};
        if (x.kind == self) {
          for (Nnf& y : x.args) out.args.push_back(std::move(y));
        } else {
          out.args.push_back(std::move(x));
        }
      }
      if (out.args.empty()) return Nnf{unit, {}, false, {}};
      if (out.args.size() == 1) return std::move(out.args[0]);
      return out;
    }
    case MF::Kind::Diamond:
      if (negate) return Nnf{Nnf::Kind::Box, {}, false, {nnf(f.args[0], true)}};
      return Nnf{Nnf::Kind::Dia, {}, false, {nnf(f.args[0], false)}};
    case MF::Kind::Global: break;
  }
  throw TilingError("global box inside the scope of another connective");
}

bool positive_lit(const Nnf& x) { return x.kind == Nnf::Kind::Lit && !x.negated; }

bool disjunction_of_vars(const Nnf& x) {
  if (positive_lit(x)) return true;
  return x.kind == Nnf::Kind::Or && std::all_of(x.args.begin(), x.args.end(), positive_lit);
}

std::vector<std::string> disjuncts(const Nnf& x) {
  if (positive_lit(x)) return {x.var};
  std::vector<std::string> out;
  for (const Nnf& y : x.args) out.push_back(y.var);
  return out;
}

std::string joined(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

class Translator {
 public:
  Translation run(const MF& phi) {
    Split split;
    split_into(phi, split);
    std::vector<std::string> vars = modal_variables(phi);
    tr_.base_variables = vars;
    tr_.global_conjuncts = split.psi.size();

    Formula& f = tr_.formula;
    for (const std::string& p : vars) {
      register_fresh({FreshVariable::Kind::Complement, complement(p), {{p}}});
      atom_pair(f.var(complement(p)), f.var(p));
    }

    std::vector<TermId> chis;
    for (const MF& g : split.chi) chis.push_back(star(nnf(g, false)));
    TermId chi = f.constant(Op::One);
    if (!chis.empty()) {
      chi = chis[0];
      for (std::size_t i = 1; i < chis.size(); ++i) chi = f.apply(Op::Meet, chi, chis[i]);
    }
    tr_.chi = chi;
    std::vector<FormulaId> tr_atoms{f.negate(f.eq(chi, f.constant(Op::Zero)))};
    for (const MF& g : split.psi) tr_atoms.push_back(f.eq(star(nnf(g, false)), f.constant(Op::One)));

    FormulaId root = kNoId;
    auto add = [&](FormulaId x) { root = root == kNoId ? x : f.conj(root, x); };
    for (FormulaId z : zeta_) add(z);
    for (FormulaId x : tr_atoms) add(x);
    f.set_root(root);
    tr_.zeta_atoms = zeta_.size();
    tr_.box_subformulas = boxes_.size();
    return std::move(tr_);
  }

 private:
  static std::string complement(const std::string& p) { return p + "_n"; }

  void register_fresh(FreshVariable v) { tr_.fresh.push_back(std::move(v)); }

  /// x \/ y = 1 and x /\ y = 0, where y is the term being simulated.
  void atom_pair(TermId x, TermId y) {
    Formula& f = tr_.formula;
    zeta_.push_back(f.eq(f.apply(Op::Join, y, x), f.constant(Op::One)));
    zeta_.push_back(f.eq(f.apply(Op::Meet, y, x), f.constant(Op::Zero)));
  }

  void box_pair(TermId fresh, TermId diamond_arg) {
    Formula& f = tr_.formula;
    const TermId d = f.apply(Op::Diamond, diamond_arg);
    zeta_.push_back(f.eq(f.apply(Op::Join, fresh, d), f.constant(Op::One)));
    zeta_.push_back(f.eq(f.apply(Op::Meet, fresh, d), f.constant(Op::Zero)));
  }

  TermId meet_all(const std::vector<TermId>& xs) {
    Formula& f = tr_.formula;
    if (xs.empty()) return f.constant(Op::One);
    TermId acc = xs[0];
    for (std::size_t i = 1; i < xs.size(); ++i) acc = f.apply(Op::Meet, acc, xs[i]);
    return acc;
  }

  TermId join_all(const std::vector<TermId>& xs) {
    Formula& f = tr_.formula;
    if (xs.empty()) return f.constant(Op::Zero);
    TermId acc = xs[0];
    for (std::size_t i = 1; i < xs.size(); ++i) acc = f.apply(Op::Join, acc, xs[i]);
    return acc;
  }

  TermId box(const Nnf& body) {
    Formula& f = tr_.formula;
    FreshVariable v;
    std::vector<std::vector<std::string>> rows;
    if (body.kind == Nnf::Kind::Top) return f.constant(Op::One);
    if (body.kind == Nnf::Kind::Lit) {
      v.kind = body.negated ? FreshVariable::Kind::BoxNeg : FreshVariable::Kind::Box;
      v.name = (body.negated ? "bn_" : "b_") + body.var;
      rows = {{body.var}};
    } else if (body.kind == Nnf::Kind::Bot || body.kind == Nnf::Kind::Or) {
      if (body.kind == Nnf::Kind::Or && !disjunction_of_vars(body))
        throw TilingError("box over a disjunction with negated or compound disjuncts");
      v.kind = FreshVariable::Kind::BoxDisj;
      rows = {body.kind == Nnf::Kind::Bot ? std::vector<std::string>{} : disjuncts(body)};
      v.name = "bd_" + joined(rows[0], "_");
    } else if (body.kind == Nnf::Kind::And &&
               std::all_of(body.args.begin(), body.args.end(), disjunction_of_vars)) {
      v.kind = FreshVariable::Kind::BoxConjDisj;
      std::vector<std::string> parts;
      for (const Nnf& r : body.args) {
        rows.push_back(disjuncts(r));
        parts.push_back(joined(rows.back(), "_"));
      }
      v.name = "bcd_" + joined(parts, "__");
    } else {
      throw TilingError("box shape outside the handled forms");
    }
    v.args = rows;
    const TermId fresh = f.var(v.name);
    if (boxes_.insert(v.name).second) {
      std::vector<TermId> alts;
      if (v.kind == FreshVariable::Kind::Box) {
        alts.push_back(f.var(complement(body.var)));
      } else if (v.kind == FreshVariable::Kind::BoxNeg) {
        alts.push_back(f.var(body.var));
      } else {
        for (const auto& row : rows) {
          std::vector<TermId> comp;
          for (const std::string& p : row) comp.push_back(f.var(complement(p)));
          alts.push_back(meet_all(comp));
        }
      }
      const TermId arg = v.kind == FreshVariable::Kind::BoxDisj ? alts[0] : join_all(alts);
      box_pair(fresh, arg);
      register_fresh(std::move(v));
    }
    return fresh;
  }

  TermId star(const Nnf& x) {
    Formula& f = tr_.formula;
    switch (x.kind) {
      case Nnf::Kind::Top: return f.constant(Op::One);
      case Nnf::Kind::Bot: return f.constant(Op::Zero);
      case Nnf::Kind::Lit: return f.var(x.negated ? complement(x.var) : x.var);
      case Nnf::Kind::And:
      case Nnf::Kind::Or: {
        std::vector<TermId> parts;
        for (const Nnf& y : x.args) parts.push_back(star(y));
        return x.kind == Nnf::Kind::And ? meet_all(parts) : join_all(parts);
      }
      case Nnf::Kind::Dia: return f.apply(Op::Diamond, star(x.args[0]));
      case Nnf::Kind::Box: return box(x.args[0]);
    }
    return kNoId;
  }

  Translation tr_;
  std::vector<FormulaId> zeta_;
  std::set<std::string> boxes_;
};

}  // namespace

Translation translate(const MF& f) { return Translator().run(f); }

// ------------------------------------------------------ model <-> algebra

WorldSet PowersetAlgebra::diamond(const WorldSet& a) const {
  WorldSet out(frame.worlds, 0);
  for (int w = 0; w < frame.worlds; ++w)
    for (int u : frame.succ[w])
      if (a[u]) {
        out[w] = 1;
        break;
      }
  return out;
}

ModelAlgebra model_to_algebra(const KripkeModel& m, const Translation& tr) {
  ModelAlgebra out;
  out.algebra.frame.worlds = m.worlds;
  out.algebra.frame.succ = m.succ;
  const int n = m.worlds;
  auto truth = [&](const std::string& p) -> const std::vector<char>& {
    auto it = m.valuation.find(p);
    if (it == m.valuation.end()) throw std::invalid_argument("model has no variable " + p);
    return it->second;
  };
  for (const std::string& p : tr.base_variables) out.valuation[p] = truth(p);
  auto every_successor = [&](auto&& ok) {
    WorldSet s(n, 0);
    for (int w = 0; w < n; ++w)
      s[w] = std::all_of(m.succ[w].begin(), m.succ[w].end(), ok);
    return s;
  };
  for (const FreshVariable& v : tr.fresh) {
    switch (v.kind) {
      case FreshVariable::Kind::Complement: {
        WorldSet s = truth(v.args[0][0]);
        for (char& b : s) b = !b;
        out.valuation[v.name] = s;
        break;
      }
      case FreshVariable::Kind::Box: {
        const auto& x = truth(v.args[0][0]);
        out.valuation[v.name] = every_successor([&](int u) { return x[u] != 0; });
        break;
      }
      case FreshVariable::Kind::BoxNeg: {
        const auto& x = truth(v.args[0][0]);
        out.valuation[v.name] = every_successor([&](int u) { return x[u] == 0; });
        break;
      }
      case FreshVariable::Kind::BoxDisj:
      case FreshVariable::Kind::BoxConjDisj:
        out.valuation[v.name] = every_successor([&](int u) {
          return std::all_of(v.args.begin(), v.args.end(), [&](const std::vector<std::string>& row) {
            return std::any_of(row.begin(), row.end(), [&](const std::string& p) { return truth(p)[u] != 0; });
          });
        });
        break;
    }
  }
  return out;
}

WorldSet evaluate_term(const PowersetAlgebra& a, const Formula& f, TermId t, const SetValuation& v) {
  const TermNode& node = f.terms().node(t);
  const int n = a.worlds();
  switch (node.op) {
    case Op::Var: {
      auto it = v.find(f.terms().var_name(node.var));
      if (it == v.end()) throw std::out_of_range("no value for " + f.terms().var_name(node.var));
      return it->second;
    }
    case Op::Zero: return WorldSet(n, 0);
    case Op::One: return WorldSet(n, 1);
    case Op::Meet:
    case Op::Join: {
      WorldSet x = evaluate_term(a, f, node.lhs, v);
      const WorldSet y = evaluate_term(a, f, node.rhs, v);
      for (int i = 0; i < n; ++i) x[i] = node.op == Op::Meet ? (x[i] && y[i]) : (x[i] || y[i]);
      return x;
    }
    case Op::Diamond: return a.diamond(evaluate_term(a, f, node.lhs, v));
    default: throw std::invalid_argument("operation outside the bdo signature");
  }
}

bool evaluate_formula(const PowersetAlgebra& a, const Formula& f, const SetValuation& v) {
  std::unordered_map<TermId, WorldSet> memo;
  std::function<const WorldSet&(TermId)> term = [&](TermId t) -> const WorldSet& {
    auto it = memo.find(t);
    if (it != memo.end()) return it->second;
    const TermNode& node = f.terms().node(t);
    WorldSet val;
    switch (node.op) {
      case Op::Meet:
      case Op::Join: {
        val = term(node.lhs);
        const WorldSet& y = term(node.rhs);
        for (std::size_t i = 0; i < val.size(); ++i)
          val[i] = node.op == Op::Meet ? (val[i] && y[i]) : (val[i] || y[i]);
        break;
      }
      case Op::Diamond: val = a.diamond(term(node.lhs)); break;
      default: val = evaluate_term(a, f, t, v);
    }
    return memo.emplace(t, std::move(val)).first->second;
  };
  std::function<bool(FormulaId)> holds = [&](FormulaId id) -> bool {
    const FNode& n = f.fnode(id);
    switch (n.kind) {
      case FKind::Eq: return term(n.a) == term(n.b);
      case FKind::Leq: {
        const WorldSet& x = term(n.a);
        const WorldSet& y = term(n.b);
        for (std::size_t i = 0; i < x.size(); ++i)
          if (x[i] && !y[i]) return false;
        return true;
      }
      case FKind::Not: return !holds(n.a);
      case FKind::And: return holds(n.a) && holds(n.b);
      case FKind::Or: return holds(n.a) || holds(n.b);
    }
    return false;
  };
  return holds(f.root());
}

namespace {

int set_to_element(const WorldSet& s) {
  int k = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i]) k |= 1 << i;
  return k;
}

}  // namespace

FiniteAlgebra to_finite_algebra(const PowersetAlgebra& a) {
  const int w = a.worlds();
  if (w > 6) throw SizeLimitError("powerset algebra tables are limited to 6 worlds");
  const int n = 1 << w;
  FiniteAlgebra out;
  out.sig = Signature::make(AlgebraClass::Bdo);
  out.size = n;
  out.order.assign(n * n, 0);
  out.meet.resize(n * n);
  out.join.resize(n * n);
  out.diamond.resize(n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      out.order[x * n + y] = (x & ~y) == 0;
      out.meet[x * n + y] = x & y;
      out.join[x * n + y] = x | y;
    }
    WorldSet s(w);
    for (int i = 0; i < w; ++i) s[i] = (x >> i) & 1;
    out.diamond[x] = set_to_element(a.diamond(s));
  }
  out.zero = 0;
  out.one = n - 1;
  return out;
}

Valuation to_element_valuation(const SetValuation& v) {
  Valuation out;
  for (const auto& [name, s] : v) out[name] = set_to_element(s);
  return out;
}

namespace {

int finite_term(const FiniteAlgebra& a, const Formula& f, TermId t, const Valuation& v) {
  const TermNode& node = f.terms().node(t);
  switch (node.op) {
    case Op::Var: return v.at(f.terms().var_name(node.var));
    case Op::Zero: return a.zero;
    case Op::One: return a.one;
    case Op::Meet:
    case Op::Join:
      return a.apply(node.op, finite_term(a, f, node.lhs, v), finite_term(a, f, node.rhs, v));
    case Op::Diamond: return a.diamond[finite_term(a, f, node.lhs, v)];
    default: throw std::invalid_argument("operation outside the bdo signature");
  }
}

}  // namespace

PointedModel algebra_to_model(const FiniteAlgebra& a, const Valuation& v, const Translation& tr) {
  if (a.sig.cls != AlgebraClass::Bdo) throw std::invalid_argument("algebra_to_model needs a bdo");
  const std::vector<Mask> filters = algebra_prime_filters(a);
  const int k = static_cast<int>(filters.size());
  PointedModel pm;
  pm.model.worlds = k;
  pm.model.succ.resize(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      bool related = true;
      for (int x = 0; x < a.size && related; ++x)
        if (has(filters[j], x) && !has(filters[i], a.diamond[x])) related = false;
      if (related) pm.model.succ[i].push_back(j);
    }
  for (const std::string& p : tr.base_variables) {
    std::vector<char>& flags = pm.model.valuation[p];
    flags.resize(k);
    for (int i = 0; i < k; ++i) flags[i] = has(filters[i], v.at(p));
  }
  const int chi = finite_term(a, tr.formula, tr.chi, v);
  pm.root = -1;
  for (int i = 0; i < k && pm.root < 0; ++i)
    if (has(filters[i], chi)) pm.root = i;
  if (pm.root < 0) throw TilingError("v(chi) = 0: no prime filter contains it");
  return pm;
}

PointedModel algebra_to_model(const PowersetAlgebra& a, const SetValuation& v, const Translation& tr) {
  // Prime filters of a powerset are the principal filters of singletons,
  // and R(up{w}, up{u}) holds iff w lies in <>{u}.
  const int k = a.worlds();
  PointedModel pm;
  pm.model.worlds = k;
  pm.model.succ.resize(k);
  for (int u = 0; u < k; ++u) {
    WorldSet single(k, 0);
    single[u] = 1;
    const WorldSet d = a.diamond(single);
    for (int w = 0; w < k; ++w)
      if (d[w]) pm.model.succ[w].push_back(u);
  }
  for (const std::string& p : tr.base_variables) pm.model.valuation[p] = v.at(p);
  const WorldSet chi = evaluate_term(a, tr.formula, tr.chi, v);
  pm.root = -1;
  for (int i = 0; i < k && pm.root < 0; ++i)
    if (chi[i]) pm.root = i;
  if (pm.root < 0) throw TilingError("v(chi) = 0: no prime filter contains it");
  return pm;
}

}  // namespace brdg
