#include "brdg/formula.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace brdg {

std::string_view to_string(AlgebraClass cls) {
  switch (cls) {
    case AlgebraClass::Bdo: return "bdo";
    case AlgebraClass::Bdbo: return "bdbo";
    case AlgebraClass::Brdg: return "brdg";
    case AlgebraClass::Brdge: return "brdge";
  }
  return "?";
}

AlgebraClass parse_algebra_class(std::string_view text) {
  if (text == "bdo") return AlgebraClass::Bdo;
  if (text == "bdbo") return AlgebraClass::Bdbo;
  if (text == "brdg") return AlgebraClass::Brdg;
  if (text == "brdge") return AlgebraClass::Brdge;
  throw SignatureError("unknown class '" + std::string(text) +
                       "' (expected bdo, bdbo, brdg or brdge)");
}

std::vector<std::string> PropertySet::names() const {
  std::vector<std::string> out;
  for (int i = 0; i < 4; ++i)
    if (bits_ & (1 << i)) out.push_back("P" + std::to_string(i + 1));
  return out;
}

std::string PropertySet::to_string() const {
  std::string out;
  for (const auto& n : names()) {
    if (!out.empty()) out += ',';
    out += n;
  }
  return out;
}

PropertySet PropertySet::parse(std::string_view csv) {
  PropertySet out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    std::size_t comma = csv.find(',', pos);
    if (comma == std::string_view::npos) comma = csv.size();
    std::string_view item = csv.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) {
      if (item.size() != 2 || (item[0] != 'P' && item[0] != 'p') ||
          item[1] < '1' || item[1] > '4')
        throw SignatureError("unknown property '" + std::string(item) +
                             "' (expected P1..P4)");
      out = PropertySet(out.bits() | (1 << (item[1] - '1')));
    }
    pos = comma + 1;
  }
  return out;
}

int arity(Op op) {
  switch (op) {
    case Op::Var:
    case Op::Zero:
    case Op::One:
    case Op::Unit: return 0;
    case Op::Diamond: return 1;
    default: return 2;
  }
}

bool is_constant(Op op) {
  return op == Op::Zero || op == Op::One || op == Op::Unit;
}

std::string_view op_symbol(Op op) {
  switch (op) {
    case Op::Var: return "var";
    case Op::Zero: return "0";
    case Op::One: return "1";
    case Op::Unit: return "e";
    case Op::Meet: return "/\\";
    case Op::Join: return "\\/";
    case Op::Prod: return "*";
    case Op::Under: return "\\";
    case Op::Over: return "/";
    case Op::Diamond: return "<>";
  }
  return "?";
}

Signature Signature::make(AlgebraClass cls, PropertySet props) {
  if (cls == AlgebraClass::Brdge) props = props.with(PropertySet::kUnital);
  if (props.has(PropertySet::kUnital) && cls != AlgebraClass::Brdge)
    throw SignatureError("P4 (unital) requires class brdge");
  if (!props.empty() && cls != AlgebraClass::Brdg && cls != AlgebraClass::Brdge)
    throw SignatureError("properties P1..P4 apply only to brdg/brdge");
  return Signature{cls, props};
}

bool Signature::has_op(Op op) const {
  switch (op) {
    case Op::Var:
    case Op::Zero:
    case Op::One:
    case Op::Meet:
    case Op::Join: return true;
    case Op::Unit: return has_unit();
    case Op::Diamond: return cls == AlgebraClass::Bdo;
    case Op::Prod: return cls != AlgebraClass::Bdo;
    case Op::Under:
    case Op::Over: return has_residuals();
  }
  return false;
}

std::size_t TermDag::KeyHash::operator()(const Key& k) const noexcept {
  std::size_t h = static_cast<std::size_t>(k.op);
  h = h * 1000003u ^ k.lhs;
  h = h * 1000003u ^ k.rhs;
  h = h * 1000003u ^ k.var;
  return h;
}

TermId TermDag::intern(const TermNode& n) {
  Key key{n.op, n.lhs, n.rhs, n.var};
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  TermId id = static_cast<TermId>(nodes_.size());
  nodes_.push_back(n);
  index_.emplace(key, id);
  return id;
}

TermId TermDag::variable(std::string_view name) {
  std::string key(name);
  auto it = var_index_.find(key);
  std::uint32_t var;
  if (it == var_index_.end()) {
    var = static_cast<std::uint32_t>(var_names_.size());
    var_names_.push_back(key);
    var_index_.emplace(key, var);
  } else {
    var = it->second;
  }
  return intern(TermNode{Op::Var, kNoId, kNoId, var});
}

TermId TermDag::constant(Op op) {
  if (!is_constant(op)) throw std::invalid_argument("not a constant symbol");
  return intern(TermNode{op, kNoId, kNoId, kNoId});
}

TermId TermDag::apply(Op op, TermId lhs, TermId rhs) {
  const int n = arity(op);
  if (n == 0) throw std::invalid_argument("apply() needs an operation symbol");
  if (lhs >= nodes_.size() || (n == 2 && rhs >= nodes_.size()))
    throw std::out_of_range("term child id out of range");
  return intern(TermNode{op, lhs, n == 2 ? rhs : kNoId, kNoId});
}

TermId Formula::constant(Op op) {
  if (!sig_.has_op(op))
    throw SignatureError("constant '" + std::string(op_symbol(op)) +
                         "' is not in the signature of " +
                         std::string(to_string(sig_.cls)));
  return terms_.constant(op);
}

TermId Formula::apply(Op op, TermId lhs, TermId rhs) {
  if (!sig_.has_op(op))
    throw SignatureError("operation '" + std::string(op_symbol(op)) +
                         "' is not in the signature of " +
                         std::string(to_string(sig_.cls)));
  return terms_.apply(op, lhs, rhs);
}

FormulaId Formula::push(FNode n) {
  fnodes_.push_back(n);
  return static_cast<FormulaId>(fnodes_.size() - 1);
}

FormulaId Formula::eq(TermId s, TermId t) { return push({FKind::Eq, s, t}); }
FormulaId Formula::leq(TermId s, TermId t) { return push({FKind::Leq, s, t}); }
FormulaId Formula::negate(FormulaId f) { return push({FKind::Not, f, kNoId}); }
FormulaId Formula::conj(FormulaId f, FormulaId g) {
  return push({FKind::And, f, g});
}
FormulaId Formula::disj(FormulaId f, FormulaId g) {
  return push({FKind::Or, f, g});
}

std::vector<FormulaId> Formula::atoms() const {
  std::vector<FormulaId> out;
  if (root_ == kNoId) return out;
  std::vector<char> seen(fnodes_.size(), 0);
  std::vector<FormulaId> stack{root_};
  while (!stack.empty()) {
    FormulaId id = stack.back();
    stack.pop_back();
    if (seen[id]) continue;
    seen[id] = 1;
    const FNode& n = fnodes_[id];
    switch (n.kind) {
      case FKind::Eq:
      case FKind::Leq: out.push_back(id); break;
      case FKind::Not: stack.push_back(n.a); break;
      case FKind::And:
      case FKind::Or:
        stack.push_back(n.b);
        stack.push_back(n.a);
        break;
    }
  }
  return out;
}

std::vector<TermId> Formula::used_terms() const {
  std::vector<char> used(terms_.size(), 0);
  std::function<void(TermId)> mark = [&](TermId t) {
    if (used[t]) return;
    used[t] = 1;
    const TermNode& n = terms_.node(t);
    if (n.lhs != kNoId) mark(n.lhs);
    if (n.rhs != kNoId) mark(n.rhs);
  };
  for (FormulaId a : atoms()) {
    mark(fnodes_[a].a);
    mark(fnodes_[a].b);
  }
  std::vector<TermId> out;
  for (TermId t = 0; t < terms_.size(); ++t)
    if (used[t]) out.push_back(t);
  return out;
}

std::vector<std::uint32_t> Formula::used_variables() const {
  std::vector<std::uint32_t> out;
  std::vector<char> seen(terms_.var_count(), 0);
  std::function<void(TermId)> visit = [&](TermId t) {
    const TermNode& n = terms_.node(t);
    if (n.op == Op::Var) {
      if (!seen[n.var]) {
        seen[n.var] = 1;
        out.push_back(n.var);
      }
      return;
    }
    if (n.lhs != kNoId) visit(n.lhs);
    if (n.rhs != kNoId) visit(n.rhs);
  };
  for (FormulaId a : atoms()) {
    visit(fnodes_[a].a);
    visit(fnodes_[a].b);
  }
  return out;
}

namespace {

// Binding strength used by the printer; larger binds tighter.
int precedence(Op op) {
  switch (op) {
    case Op::Join: return 1;
    case Op::Meet: return 2;
    case Op::Prod:
    case Op::Under:
    case Op::Over: return 3;
    case Op::Diamond: return 4;
    default: return 5;
  }
}

void print_term_rec(const TermDag& dag, TermId id, std::ostream& os) {
  const TermNode& n = dag.node(id);
  switch (n.op) {
    case Op::Var: os << dag.var_name(n.var); return;
    case Op::Zero:
    case Op::One:
    case Op::Unit: os << op_symbol(n.op); return;
    case Op::Diamond: {
      os << "<>";
      bool paren = precedence(dag.node(n.lhs).op) < precedence(Op::Diamond);
      if (paren) os << '(';
      print_term_rec(dag, n.lhs, os);
      if (paren) os << ')';
      return;
    }
    default: break;
  }
  const int p = precedence(n.op);
  const bool lparen = precedence(dag.node(n.lhs).op) < p;
  const bool rparen = precedence(dag.node(n.rhs).op) <= p;
  if (lparen) os << '(';
  print_term_rec(dag, n.lhs, os);
  if (lparen) os << ')';
  os << ' ' << op_symbol(n.op) << ' ';
  if (rparen) os << '(';
  print_term_rec(dag, n.rhs, os);
  if (rparen) os << ')';
}

int fprecedence(FKind k) {
  switch (k) {
    case FKind::Or: return 1;
    case FKind::And: return 2;
    case FKind::Not: return 3;
    default: return 4;
  }
}

void print_formula_rec(const Formula& f, FormulaId id, std::ostream& os) {
  const FNode& n = f.fnode(id);
  switch (n.kind) {
    case FKind::Eq:
    case FKind::Leq:
      print_term_rec(f.terms(), n.a, os);
      os << (n.kind == FKind::Eq ? " = " : " <= ");
      print_term_rec(f.terms(), n.b, os);
      return;
    case FKind::Not: {
      os << '!';
      // Atoms are parenthesised too so that "!" visibly covers the relation.
      bool paren = fprecedence(f.fnode(n.a).kind) != fprecedence(FKind::Not);
      if (paren) os << '(';
      print_formula_rec(f, n.a, os);
      if (paren) os << ')';
      return;
    }
    case FKind::And:
    case FKind::Or: {
      const int p = fprecedence(n.kind);
      bool lparen = fprecedence(f.fnode(n.a).kind) < p;
      bool rparen = fprecedence(f.fnode(n.b).kind) <= p;
      if (lparen) os << '(';
      print_formula_rec(f, n.a, os);
      if (lparen) os << ')';
      os << (n.kind == FKind::And ? " & " : " | ");
      if (rparen) os << '(';
      print_formula_rec(f, n.b, os);
      if (rparen) os << ')';
      return;
    }
  }
}

bool terms_equal(const TermDag& a, TermId x, const TermDag& b, TermId y) {
  const TermNode& n = a.node(x);
  const TermNode& m = b.node(y);
  if (n.op != m.op) return false;
  if (n.op == Op::Var) return a.var_name(n.var) == b.var_name(m.var);
  if (n.lhs != kNoId && !terms_equal(a, n.lhs, b, m.lhs)) return false;
  if (n.rhs != kNoId && !terms_equal(a, n.rhs, b, m.rhs)) return false;
  return true;
}

bool formulas_equal(const Formula& a, FormulaId x, const Formula& b,
                    FormulaId y) {
  const FNode& n = a.fnode(x);
  const FNode& m = b.fnode(y);
  if (n.kind != m.kind) return false;
  switch (n.kind) {
    case FKind::Eq:
    case FKind::Leq:
      return terms_equal(a.terms(), n.a, b.terms(), m.a) &&
             terms_equal(a.terms(), n.b, b.terms(), m.b);
    case FKind::Not: return formulas_equal(a, n.a, b, m.a);
    default:
      return formulas_equal(a, n.a, b, m.a) && formulas_equal(a, n.b, b, m.b);
  }
}

}  // namespace

std::string print_term(const TermDag& dag, TermId id) {
  std::ostringstream os;
  print_term_rec(dag, id, os);
  return os.str();
}

std::string print_formula(const Formula& f, FormulaId id) {
  std::ostringstream os;
  print_formula_rec(f, id, os);
  return os.str();
}

std::string print_formula(const Formula& f) {
  if (f.root() == kNoId) return "";
  return print_formula(f, f.root());
}

bool structurally_equal(const Formula& a, const Formula& b) {
  if (a.root() == kNoId || b.root() == kNoId) return a.root() == b.root();
  return formulas_equal(a, a.root(), b, b.root());
}

std::uint64_t formula_size(const Formula& f) {
  const TermDag& dag = f.terms();
  // Occurrence count of operation symbols in the tree unfolding of each term.
  std::vector<std::uint64_t> occ(dag.size(), 0);
  for (TermId t = 0; t < dag.size(); ++t) {
    const TermNode& n = dag.node(t);
    if (arity(n.op) == 0) continue;
    occ[t] = 1 + occ[n.lhs] + (n.rhs != kNoId ? occ[n.rhs] : 0);
  }
  std::uint64_t ops = 0;
  std::function<void(FormulaId)> walk = [&](FormulaId id) {
    const FNode& n = f.fnode(id);
    switch (n.kind) {
      case FKind::Eq:
      case FKind::Leq: ops += occ[n.a] + occ[n.b]; break;
      case FKind::Not: walk(n.a); break;
      default:
        walk(n.a);
        walk(n.b);
    }
  };
  if (f.root() != kNoId) walk(f.root());
  return ops + f.used_variables().size() +
         static_cast<std::uint64_t>(f.signature().constant_count());
}

TermId copy_term_into(Formula& dst, const TermDag& src, TermId id) {
  const TermNode& n = src.node(id);
  switch (n.op) {
    case Op::Var: return dst.var(src.var_name(n.var));
    case Op::Zero:
    case Op::One:
    case Op::Unit: return dst.constant(n.op);
    default: break;
  }
  TermId l = copy_term_into(dst, src, n.lhs);
  TermId r = n.rhs != kNoId ? copy_term_into(dst, src, n.rhs) : kNoId;
  return dst.apply(n.op, l, r);
}

FormulaId copy_into(Formula& dst, const Formula& src, FormulaId id) {
  const FNode& n = src.fnode(id);
  switch (n.kind) {
    case FKind::Eq:
    case FKind::Leq: {
      TermId s = copy_term_into(dst, src.terms(), n.a);
      TermId t = copy_term_into(dst, src.terms(), n.b);
      return n.kind == FKind::Eq ? dst.eq(s, t) : dst.leq(s, t);
    }
    case FKind::Not: return dst.negate(copy_into(dst, src, n.a));
    case FKind::And: {
      FormulaId l = copy_into(dst, src, n.a);
      return dst.conj(l, copy_into(dst, src, n.b));
    }
    case FKind::Or: {
      FormulaId l = copy_into(dst, src, n.a);
      return dst.disj(l, copy_into(dst, src, n.b));
    }
  }
  return kNoId;
}

namespace {

TermId circ_term(Formula& dst, const TermDag& src, TermId id,
                 std::vector<TermId>& memo) {
  if (memo[id] != kNoId) return memo[id];
  const TermNode& n = src.node(id);
  TermId out;
  switch (n.op) {
    case Op::Var: out = dst.var(src.var_name(n.var)); break;
    case Op::Zero:
    case Op::One: out = dst.constant(n.op); break;
    case Op::Diamond:
      out = dst.apply(Op::Prod, circ_term(dst, src, n.lhs, memo),
                      dst.constant(Op::One));
      break;
    default:
      out = dst.apply(n.op, circ_term(dst, src, n.lhs, memo),
                      circ_term(dst, src, n.rhs, memo));
  }
  return memo[id] = out;
}

FormulaId circ_formula(Formula& dst, const Formula& src, FormulaId id,
                       std::vector<TermId>& memo) {
  const FNode& n = src.fnode(id);
  switch (n.kind) {
    case FKind::Eq:
    case FKind::Leq: {
      TermId s = circ_term(dst, src.terms(), n.a, memo);
      TermId t = circ_term(dst, src.terms(), n.b, memo);
      return n.kind == FKind::Eq ? dst.eq(s, t) : dst.leq(s, t);
    }
    case FKind::Not: return dst.negate(circ_formula(dst, src, n.a, memo));
    case FKind::And: {
      FormulaId l = circ_formula(dst, src, n.a, memo);
      return dst.conj(l, circ_formula(dst, src, n.b, memo));
    }
    case FKind::Or: {
      FormulaId l = circ_formula(dst, src, n.a, memo);
      return dst.disj(l, circ_formula(dst, src, n.b, memo));
    }
  }
  return kNoId;
}

}  // namespace

Formula diamond_to_circ(const Formula& f) {
  if (f.signature().cls != AlgebraClass::Bdo)
    throw SignatureError("diamond_to_circ expects a bdo formula");
  Formula out(Signature::make(AlgebraClass::Bdbo));
  if (f.root() == kNoId) return out;
  std::vector<TermId> memo(f.terms().size(), kNoId);
  out.set_root(circ_formula(out, f, f.root(), memo));
  return out;
}

Formula negate_for_validity(const UniversalSentence& sentence) {
  Formula out(sentence.body.signature());
  for (const auto& v : sentence.variables) out.var(v);
  FormulaId body = copy_into(out, sentence.body, sentence.body.root());
  out.set_root(out.negate(body));
  return out;
}

ParseError::ParseError(Kind kind, std::size_t position,
                       const std::string& message)
    : std::runtime_error(message + " (at offset " + std::to_string(position) +
                         ")"),
      kind_(kind),
      position_(position) {}

}  // namespace brdg
