#include "brdg/corpus.hpp"

namespace brdg {

namespace {

TermId random_term(Formula& f, std::mt19937_64& rng, const CorpusOptions& opt, int depth) {
  const Signature& sig = f.signature();
  std::vector<Op> binary;
  for (Op op : {Op::Meet, Op::Join, Op::Prod, Op::Under, Op::Over})
    if (sig.has_op(op)) binary.push_back(op);
  const bool diamond = sig.has_op(Op::Diamond);
  auto pick = [&](int n) { return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng)); };
  if (depth == 0 || pick(3) == 0) {
    const int consts = sig.has_unit() ? 3 : 2;
    const int r = pick(opt.variables * 3 + consts);
    if (r < opt.variables * 3) return f.var(std::string(1, static_cast<char>('x' + r % opt.variables)));
    const Op c[] = {Op::Zero, Op::One, Op::Unit};
    return f.constant(c[r - opt.variables * 3]);
  }
  const int choices = static_cast<int>(binary.size()) + (diamond ? 1 : 0);
  const int r = pick(choices);
  if (r == static_cast<int>(binary.size())) return f.apply(Op::Diamond, random_term(f, rng, opt, depth - 1));
  const TermId a = random_term(f, rng, opt, depth - 1);
  const TermId b = random_term(f, rng, opt, depth - 1);
  return f.apply(binary[r], a, b);
}

}  // namespace

Formula random_formula(const Signature& sig, std::mt19937_64& rng, const CorpusOptions& opt) {
  Formula f(sig);
  auto pick = [&](int n) { return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng)); };
  const int atoms = 1 + pick(opt.max_atoms);
  FormulaId acc = kNoId;
  for (int i = 0; i < atoms; ++i) {
    const TermId s = random_term(f, rng, opt, opt.max_depth);
    const TermId t = random_term(f, rng, opt, opt.max_depth);
    FormulaId a = pick(2) ? f.leq(s, t) : f.eq(s, t);
    if (pick(2)) a = f.negate(a);
    if (acc == kNoId) acc = a;
    else acc = pick(3) ? f.conj(acc, a) : f.disj(acc, a);
  }
  f.set_root(acc);
  return f;
}

Formula with_signature(const Formula& f, const Signature& sig) {
  Formula g(sig);
  if (f.root() != kNoId) g.set_root(copy_into(g, f, f.root()));
  return g;
}

}  // namespace brdg
