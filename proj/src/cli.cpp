#include "brdg/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "brdg/filters.hpp"
#include "brdg/frames.hpp"
#include "brdg/json_io.hpp"
#include "brdg/oracle.hpp"
#include "brdg/solver.hpp"
#include "brdg/tiling.hpp"

namespace brdg {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  bool json = false;
  int jobs = 1;
  std::string cls;
  std::string props;
  std::string file;
  std::string formula_text;
  std::string structure;
  std::string witness;
  bool naive = false;
  std::uint64_t naive_budget = 20'000'000;
  int max_size = 4;
  std::optional<std::uint64_t> seed;
  std::string input;
  std::string output;
  std::string modal_output;
  std::uint64_t round_cap = 0;
  std::uint64_t max_states = 50'000'000;
  int max_worlds = 6;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json read_json(const std::string& path) {
  const std::string text = read_text(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

Signature signature(const Config& c) {
  if (c.cls.empty()) throw UsageError("--class is required");
  return Signature::make(parse_algebra_class(c.cls), PropertySet::parse(c.props));
}

std::string formula_source(const Config& c) {
  if (!c.file.empty() && !c.formula_text.empty()) throw UsageError("give either --file or --formula");
  if (!c.file.empty()) return read_text(c.file);
  if (!c.formula_text.empty()) return c.formula_text;
  throw UsageError("--file or --formula is required");
}

Json header(const std::string& command, const Signature& sig) {
  Json j;
  j["schema"] = 1;
  j["command"] = command;
  j["class"] = std::string(to_string(sig.cls));
  j["properties"] = sig.props.names();
  return j;
}

Json witness_json(const SatWitness& w) {
  Json j;
  j["structure"] = structure_to_json(w.structure);
  j["valuation"] = valuation_to_json(w.valuation);
  j["certificate"] = certificate_to_json(w.structure, w.certificate);
  return j;
}

void dump_witness(const Config& c, const SatWitness& w) {
  if (c.witness.empty()) return;
  Json j;
  j["schema"] = 1;
  j.update(witness_json(w));
  write_text(c.witness, j.dump(2) + "\n");
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

SolverOptions solver_options(const Config& c) {
  SolverOptions opt;
  opt.jobs = c.jobs;
  opt.naive = c.naive;
  opt.naive_budget = c.naive_budget;
  return opt;
}

int cmd_sat(const Config& c, std::ostream& out) {
  const Signature sig = signature(c);
  const Formula f = parse_formula(formula_source(c), sig);
  const SatResult r = decide_sat(f, solver_options(c));
  if (r.witness) dump_witness(c, *r.witness);
  if (c.json) {
    Json j = header("sat", sig);
    j["formula"] = print_formula(f);
    j["size_bound"] = formula_size(f);
    j["result"] = r.sat ? "sat" : "unsat";
    if (r.witness) j["witness"] = witness_json(*r.witness);
    emit(out, j);
  } else if (r.sat) {
    out << "sat: witness with " << r.witness->structure.size() << " elements (bound "
        << formula_size(f) << ")\n";
  } else {
    out << "unsat\n";
  }
  return r.sat ? kExitPositive : kExitNegative;
}

int cmd_valid(const Config& c, std::ostream& out) {
  const Signature sig = signature(c);
  const UniversalSentence s = parse_universal(formula_source(c), sig);
  const ValidResult r = decide_valid(s, solver_options(c));
  if (r.countermodel) dump_witness(c, *r.countermodel);
  if (c.json) {
    Json j = header("valid", sig);
    j["variables"] = s.variables;
    j["formula"] = print_formula(s.body);
    j["result"] = r.valid ? "valid" : "invalid";
    if (r.countermodel) j["countermodel"] = witness_json(*r.countermodel);
    emit(out, j);
  } else if (r.valid) {
    out << "valid\n";
  } else {
    out << "invalid: countermodel with " << r.countermodel->structure.size() << " elements\n";
    for (const auto& [name, x] : r.countermodel->valuation)
      out << "  " << name << " = " << r.countermodel->structure.name(x) << "\n";
  }
  return r.valid ? kExitPositive : kExitNegative;
}

int cmd_certify(const Config& c, std::ostream& out) {
  if (c.structure.empty()) throw UsageError("--structure is required");
  Json sj = read_json(c.structure);
  if (!sj.is_object()) throw FormatError(c.structure + ": structure must be a JSON object");
  if (!c.cls.empty()) {
    sj["class"] = c.cls;
    sj["properties"] = PropertySet::parse(c.props).names();
  }
  const PartialStructure b = structure_from_json(sj);
  CertifyOptions opt;
  opt.jobs = c.jobs;
  const CertifyResult r = certify(b, opt);

  std::optional<bool> order_invariant;
  if (c.seed && validate_partial_lattice(b)) {
    const FilterSystem sys = certification_system(b);
    FilterFamily f0 = prime_filters(b, b.signature().props);
    const FilterFamily plain = refine(sys, f0);
    std::mt19937_64 rng(*c.seed);
    std::shuffle(f0.begin(), f0.end(), rng);
    order_invariant = refine(sys, f0) == plain;
  }

  if (r.certificate && !c.witness.empty()) {
    Json w;
    w["schema"] = 1;
    w["structure"] = structure_to_json(b);
    w["certificate"] = certificate_to_json(b, *r.certificate);
    w["completion"] = algebra_to_json(completion(b, *r.certificate).algebra);
    write_text(c.witness, w.dump(2) + "\n");
  }

  if (c.json) {
    Json j = header("certify", b.signature());
    j["result"] = r ? "certified" : "refused";
    if (r.certificate) j["certificate"] = certificate_to_json(b, *r.certificate);
    if (r.refusal) j["refusal"] = {{"stage", std::string(to_string(r.refusal->stage))}, {"reason", r.refusal->reason}};
    if (order_invariant) j["order_invariant"] = *order_invariant;
    emit(out, j);
  } else if (r) {
    out << "certified: " << r.certificate->family.size() << " filters"
        << (r.certificate->degenerate ? " (degenerate)" : "") << "\n";
  } else {
    out << "refused (" << to_string(r.refusal->stage) << "): " << r.refusal->reason << "\n";
  }
  if (!c.json && order_invariant) out << "shuffled F0: " << (*order_invariant ? "same family" : "DIFFERENT family") << "\n";
  return r ? kExitPositive : kExitNegative;
}

int cmd_oracle_enumerate(const Config& c, std::ostream& out) {
  const Signature sig = signature(c);
  std::vector<std::size_t> per_size(c.max_size + 1, 0);
  enumerate_algebras(c.max_size, sig.cls, sig.props, [&](const FiniteAlgebra& a) {
    ++per_size[a.size];
    if (c.json) {
      Json j;
      j["schema"] = 1;
      j["size"] = a.size;
      j["algebra"] = algebra_to_json(a);
      out << j.dump() << "\n";
    }
    return true;
  });
  if (!c.json)
    for (int k = 1; k <= c.max_size; ++k) out << "size " << k << ": " << per_size[k] << " algebras\n";
  return kExitPositive;
}

int cmd_oracle_sat(const Config& c, std::ostream& out) {
  const Signature sig = signature(c);
  const Formula f = parse_formula(formula_source(c), sig);
  const BruteForceResult r = brute_force_sat(f, c.max_size);
  if (c.json) {
    Json j = header("oracle sat", sig);
    j["formula"] = print_formula(f);
    j["max_size"] = c.max_size;
    j["result"] = r ? "sat" : "exhausted";
    j["algebras_checked"] = r.algebras_checked;
    if (r) {
      j["algebra"] = algebra_to_json(r.witness->algebra);
      j["valuation"] = valuation_to_json(r.witness->valuation);
    }
    emit(out, j);
  } else if (r) {
    out << "sat in an algebra with " << r.witness->algebra.size << " elements\n";
  } else {
    out << "exhausted: no algebra with at most " << c.max_size << " elements\n";
  }
  return r ? kExitPositive : kExitNegative;
}

TilingInstance load_instance(const Config& c) {
  if (c.input.empty()) throw UsageError("-i is required");
  const TilingInstance t = tiling_from_json(read_json(c.input));
  validate_instance(t);
  return t;
}

GameOptions game_options(const Config& c) {
  GameOptions g;
  g.round_cap = c.round_cap;
  g.max_states = c.max_states;
  return g;
}

std::string winner(GameResult g) { return g == GameResult::EloiseWins ? "eloise" : "abelard"; }

int cmd_tiling_gen(const Config& c, std::ostream& out) {
  const TilingInstance t = load_instance(c);
  const ModalFormula phi = build_modal_formula(t);
  const Translation tr = translate(phi);
  const std::string text = print_formula(tr.formula) + "\n";
  if (c.output.empty()) {
    if (!c.json) out << text;
  } else {
    write_text(c.output, text);
  }
  if (!c.modal_output.empty()) write_text(c.modal_output, print_modal(phi) + "\n");
  if (c.json) {
    Json j;
    j["schema"] = 1;
    j["command"] = "tiling gen";
    j["rounds"] = round_bound(t);
    j["counter_bits"] = counter_bits(t);
    j["base_variables"] = tr.base_variables.size();
    j["fresh_variables"] = tr.fresh.size();
    j["zeta_atoms"] = tr.zeta_atoms;
    j["box_subformulas"] = tr.box_subformulas;
    if (c.output.empty()) j["formula"] = print_formula(tr.formula);
    emit(out, j);
  }
  return kExitPositive;
}

int cmd_tiling_solve(const Config& c, std::ostream& out) {
  const TilingInstance t = load_instance(c);
  const GameResult g = solve_game(t, game_options(c));
  if (c.json) {
    Json j;
    j["schema"] = 1;
    j["command"] = "tiling solve";
    j["result"] = winner(g);
    j["rounds"] = c.round_cap ? c.round_cap : round_bound(t);
    emit(out, j);
  } else {
    out << winner(g) << " wins\n";
  }
  return g == GameResult::EloiseWins ? kExitPositive : kExitNegative;
}

int cmd_tiling_roundtrip(const Config& c, std::ostream& out) {
  const TilingInstance t = load_instance(c);
  const GameOptions g = game_options(c);
  const GameResult result = solve_game(t, g);
  const ModalFormula phi = build_modal_formula(t);
  const Translation tr = translate(phi);
  Json j;
  j["schema"] = 1;
  j["command"] = "tiling roundtrip";
  j["game"] = winner(result);
  bool consistent = true;
  if (result == GameResult::EloiseWins) {
    const PointedModel sm = strategy_model(t, g);
    const bool kripke = kripke_check(sm.model, sm.root, phi);
    const ModelAlgebra ma = model_to_algebra(sm.model, tr);
    const bool algebra = evaluate_formula(ma.algebra, tr.formula, ma.valuation);
    const PointedModel back = algebra_to_model(ma.algebra, ma.valuation, tr);
    const bool returned = kripke_check(back.model, back.root, phi);
    j["strategy_model_worlds"] = sm.model.worlds;
    j["strategy_model_satisfies"] = kripke;
    j["algebra_satisfies"] = algebra;
    j["filter_model_satisfies"] = returned;
    consistent = kripke && algebra && returned;
  } else {
    const BoundedSearchResult r = bounded_search(phi, c.max_worlds);
    j["bounded_search"] = {{"max_worlds", c.max_worlds}, {"model_found", r.model.has_value()}, {"bounded", true}};
    consistent = !r.model;
  }
  j["consistent"] = consistent;
  if (c.json) {
    emit(out, j);
  } else {
    out << winner(result) << " wins; ";
    if (result == GameResult::EloiseWins)
      out << "strategy model (" << j["strategy_model_worlds"].get<int>() << " worlds) -> algebra -> filter model: "
          << (consistent ? "ok" : "MISMATCH") << "\n";
    else
      out << "no model with at most " << c.max_worlds << " worlds (bounded check): "
          << (consistent ? "ok" : "MISMATCH") << "\n";
  }
  return consistent ? kExitPositive : kExitNegative;
}

void add_common(CLI::App* app, Config& c) {
  app->add_flag("--json", c.json, "machine-readable output");
  app->add_option("--jobs", c.jobs, "worker threads")->check(CLI::Range(1, 256));
}

void add_signature(CLI::App* app, Config& c, bool required) {
  auto* o = app->add_option("--class", c.cls, "bdo, bdbo, brdg or brdge");
  if (required) o->required();
  app->add_option("--prop", c.props, "comma-separated subset of P1,P2,P3,P4");
}

void add_formula(CLI::App* app, Config& c) {
  app->add_option("--file", c.file, "formula file");
  app->add_option("--formula", c.formula_text, "formula text");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app("Decision procedures for bounded residuated distributive lattice-ordered groupoids", "brdg");
  app.require_subcommand(1);

  std::function<int(const Config&, std::ostream&)> action;

  auto* sat = app.add_subcommand("sat", "decide satisfiability of a quantifier-free formula");
  auto* valid = app.add_subcommand("valid", "decide validity of a universal sentence");
  for (CLI::App* s : {sat, valid}) {
    add_common(s, c);
    add_signature(s, c, true);
    add_formula(s, c);
    s->add_flag("--naive", c.naive, "exhaustive enumeration of partial structures");
    s->add_option("--naive-budget", c.naive_budget, "candidate structures for --naive");
    s->add_option("--witness", c.witness, "write structure, valuation and certificate here");
  }
  sat->callback([&] { action = cmd_sat; });
  valid->callback([&] { action = cmd_valid; });

  auto* cert = app.add_subcommand("certify", "certify a partial structure");
  add_common(cert, c);
  add_signature(cert, c, false);
  cert->add_option("--structure", c.structure, "structure JSON")->required();
  cert->add_option("--seed", c.seed, "also refine a shuffled F0 and compare");
  cert->add_option("--witness", c.witness, "write certificate and completion here");
  cert->callback([&] { action = cmd_certify; });

  auto* oracle = app.add_subcommand("oracle", "finite-algebra oracle");
  oracle->require_subcommand(1);
  auto* oenum = oracle->add_subcommand("enumerate", "list algebras up to a size");
  auto* osat = oracle->add_subcommand("sat", "search algebras up to a size for a model");
  for (CLI::App* s : {oenum, osat}) {
    add_common(s, c);
    add_signature(s, c, true);
    s->add_option("--max-size", c.max_size, "largest carrier")->check(CLI::Range(1, kMaxOracleLattice));
  }
  add_formula(osat, c);
  oenum->callback([&] { action = cmd_oracle_enumerate; });
  osat->callback([&] { action = cmd_oracle_sat; });

  auto* tiling = app.add_subcommand("tiling", "corridor tiling reduction");
  tiling->require_subcommand(1);
  auto* gen = tiling->add_subcommand("gen", "emit the bdo formula of an instance");
  auto* solve = tiling->add_subcommand("solve", "decide the game");
  auto* trip = tiling->add_subcommand("roundtrip", "cross-check game, models and algebras");
  for (CLI::App* s : {gen, solve, trip}) {
    add_common(s, c);
    s->add_option("-i,--input", c.input, "instance JSON")->required();
    s->add_option("--round-cap", c.round_cap, "rounds before Abelard wins (default N)");
    s->add_option("--max-states", c.max_states, "position budget");
  }
  gen->add_option("-o,--output", c.output, "formula file (default stdout)");
  gen->add_option("--modal", c.modal_output, "also write the modal formula here");
  trip->add_option("--max-worlds", c.max_worlds, "bound for the Kripke search")->check(CLI::Range(1, 12));
  gen->callback([&] { action = cmd_tiling_gen; });
  solve->callback([&] { action = cmd_tiling_solve; });
  trip->callback([&] { action = cmd_tiling_roundtrip; });

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      if (!app.get_subcommands().empty()) out << app.get_subcommands().back()->help();
      return kExitPositive;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    return action(c, out);
  } catch (const SizeLimitError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const ParseError& e) {
    err << "parse error at " << e.position() << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace brdg
