#include <cctype>
#include <optional>

#include "brdg/formula.hpp"

namespace brdg {
namespace {

enum class Tok {
  Ident,
  Zero,
  One,
  Meet,
  Join,
  Prod,
  Under,
  Over,
  Diamond,
  Eq,
  Leq,
  Not,
  And,
  Or,
  LParen,
  RParen,
  Comma,
  Colon,
  Dot,
  End,
};

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Tok k, std::size_t len) {
    out.push_back({k, i, std::string(s.substr(i, len))});
    i += len;
  };
  while (i < s.size()) {
    const char c = s[i];
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) ||
                              s[j] == '_'))
        ++j;
      push(Tok::Ident, j - i);
      continue;
    }
    const char d = i + 1 < s.size() ? s[i + 1] : '\0';
    switch (c) {
      case '0': push(Tok::Zero, 1); continue;
      case '1': push(Tok::One, 1); continue;
      case '/': push(d == '\\' ? Tok::Meet : Tok::Over, d == '\\' ? 2 : 1); continue;
      case '\\': push(d == '/' ? Tok::Join : Tok::Under, d == '/' ? 2 : 1); continue;
      case '*': push(Tok::Prod, 1); continue;
      case '<':
        if (d == '>') { push(Tok::Diamond, 2); continue; }
        if (d == '=') { push(Tok::Leq, 2); continue; }
        break;
      case '=': push(Tok::Eq, 1); continue;
      case '!': push(Tok::Not, 1); continue;
      case '&': push(Tok::And, 1); continue;
      case '|': push(Tok::Or, 1); continue;
      case '(': push(Tok::LParen, 1); continue;
      case ')': push(Tok::RParen, 1); continue;
      case ',': push(Tok::Comma, 1); continue;
      case ':': push(Tok::Colon, 1); continue;
      case '.': push(Tok::Dot, 1); continue;
      default: break;
    }
    throw ParseError(ParseError::Kind::Syntax, i,
                     "unexpected character '" + std::string(1, c) + "'");
  }
  out.push_back({Tok::End, s.size(), ""});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, Formula& f) : toks_(std::move(toks)), f_(f) {
    match_parens();
  }

  std::optional<std::vector<std::string>> header() {
    if (peek().kind != Tok::Ident || peek().text != "forall") return std::nullopt;
    ++pos_;
    std::vector<std::string> vars;
    while (peek().kind == Tok::Ident) {
      vars.push_back(peek().text);
      ++pos_;
      if (peek().kind == Tok::Comma) ++pos_;
    }
    if (peek().kind != Tok::Colon && peek().kind != Tok::Dot)
      fail("expected ':' or '.' after the quantified variables");
    ++pos_;
    return vars;
  }

  FormulaId formula() {
    FormulaId lhs = conjunction();
    while (peek().kind == Tok::Or) {
      ++pos_;
      lhs = f_.disj(lhs, conjunction());
    }
    return lhs;
  }

  void expect_end() {
    if (peek().kind != Tok::End) fail("unexpected " + describe(peek()));
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(ParseError::Kind::Syntax, peek().pos, msg);
  }

  void expect(Tok k, const char* what) {
    if (peek().kind != k)
      fail(std::string("expected ") + what + ", found " + describe(peek()));
    ++pos_;
  }

  // For every '(' record whether its group contains a relation symbol, which
  // is what distinguishes a parenthesised formula from a parenthesised term.
  void match_parens() {
    formula_group_.assign(toks_.size(), 0);
    std::vector<std::size_t> open;
    std::vector<char> has_rel;
    for (std::size_t i = 0; i < toks_.size(); ++i) {
      switch (toks_[i].kind) {
        case Tok::LParen:
          open.push_back(i);
          has_rel.push_back(0);
          break;
        case Tok::RParen:
          if (open.empty())
            throw ParseError(ParseError::Kind::Syntax, toks_[i].pos,
                             "unbalanced ')'");
          formula_group_[open.back()] = has_rel.back();
          if (has_rel.back() && has_rel.size() > 1) has_rel[has_rel.size() - 2] = 1;
          open.pop_back();
          has_rel.pop_back();
          break;
        case Tok::Eq:
        case Tok::Leq:
        case Tok::And:
        case Tok::Or:
        case Tok::Not:
          if (!has_rel.empty()) has_rel.back() = 1;
          break;
        default: break;
      }
    }
    if (!open.empty())
      throw ParseError(ParseError::Kind::Syntax, toks_[open.back()].pos,
                       "unbalanced '('");
  }

  FormulaId conjunction() {
    FormulaId lhs = unary();
    while (peek().kind == Tok::And) {
      ++pos_;
      lhs = f_.conj(lhs, unary());
    }
    return lhs;
  }

  FormulaId unary() {
    if (peek().kind == Tok::Not) {
      ++pos_;
      return f_.negate(unary());
    }
    if (peek().kind == Tok::LParen && formula_group_[pos_]) {
      ++pos_;
      FormulaId inner = formula();
      expect(Tok::RParen, "')'");
      return inner;
    }
    return atom();
  }

  FormulaId atom() {
    TermId lhs = term();
    const Tok rel = peek().kind;
    if (rel != Tok::Eq && rel != Tok::Leq)
      fail("expected '=' or '<=', found " + describe(peek()));
    ++pos_;
    TermId rhs = term();
    return rel == Tok::Eq ? f_.eq(lhs, rhs) : f_.leq(lhs, rhs);
  }

  TermId apply(Op op, TermId a, TermId b, std::size_t at) {
    try {
      return f_.apply(op, a, b);
    } catch (const SignatureError& e) {
      throw ParseError(ParseError::Kind::Signature, at, e.what());
    }
  }

  TermId term() {
    TermId lhs = meet_level();
    while (peek().kind == Tok::Join) {
      std::size_t at = peek().pos;
      ++pos_;
      lhs = apply(Op::Join, lhs, meet_level(), at);
    }
    return lhs;
  }

  TermId meet_level() {
    TermId lhs = product_level();
    while (peek().kind == Tok::Meet) {
      std::size_t at = peek().pos;
      ++pos_;
      lhs = apply(Op::Meet, lhs, product_level(), at);
    }
    return lhs;
  }

  TermId product_level() {
    TermId lhs = prefix();
    for (;;) {
      Op op;
      switch (peek().kind) {
        case Tok::Prod: op = Op::Prod; break;
        case Tok::Under: op = Op::Under; break;
        case Tok::Over: op = Op::Over; break;
        default: return lhs;
      }
      std::size_t at = peek().pos;
      ++pos_;
      lhs = apply(op, lhs, prefix(), at);
    }
  }

  TermId prefix() {
    if (peek().kind == Tok::Diamond) {
      std::size_t at = peek().pos;
      ++pos_;
      TermId inner = prefix();
      return apply(Op::Diamond, inner, kNoId, at);
    }
    return primary();
  }

  TermId constant(Op op, std::size_t at) {
    try {
      return f_.constant(op);
    } catch (const SignatureError& e) {
      throw ParseError(ParseError::Kind::Signature, at, e.what());
    }
  }

  TermId primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Zero: ++pos_; return constant(Op::Zero, t.pos);
      case Tok::One: ++pos_; return constant(Op::One, t.pos);
      case Tok::Ident:
        ++pos_;
        if (t.text == "e" && f_.signature().has_unit())
          return constant(Op::Unit, t.pos);
        return f_.var(t.text);
      case Tok::LParen: {
        if (formula_group_[pos_]) fail("a formula cannot be used as a term");
        ++pos_;
        TermId inner = term();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default: fail("expected a term, found " + describe(t));
    }
  }

  std::vector<Token> toks_;
  std::vector<char> formula_group_;
  std::size_t pos_ = 0;
  Formula& f_;
};

}  // namespace

Formula parse_formula(std::string_view text, const Signature& sig) {
  Formula f(sig);
  Parser p(lex(text), f);
  f.set_root(p.formula());
  p.expect_end();
  return f;
}

UniversalSentence parse_universal(std::string_view text, const Signature& sig) {
  Formula f(sig);
  Parser p(lex(text), f);
  auto vars = p.header();
  f.set_root(p.formula());
  p.expect_end();
  UniversalSentence out{{}, std::move(f)};
  if (vars) {
    out.variables = *vars;
  } else {
    for (std::uint32_t v : out.body.used_variables())
      out.variables.push_back(out.body.terms().var_name(v));
  }
  return out;
}

}  // namespace brdg
