#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "brdg/cli.hpp"
#include "brdg/filters.hpp"
#include "brdg/json_io.hpp"
#include "brdg/oracle.hpp"
#include "brdg/solver.hpp"
#include "brdg/tiling.hpp"

namespace py = pybind11;
using namespace brdg;

namespace {

Signature sig_of(const std::string& cls, const std::string& props) {
  return Signature::make(parse_algebra_class(cls), PropertySet::parse(props));
}

Json witness_json(const SatWitness& w) {
  Json j;
  j["structure"] = structure_to_json(w.structure);
  j["valuation"] = valuation_to_json(w.valuation);
  j["certificate"] = certificate_to_json(w.structure, w.certificate);
  return j;
}

std::string sat_json(const std::string& text, const std::string& cls, const std::string& props, int jobs, bool naive) {
  const Formula f = parse_formula(text, sig_of(cls, props));
  SolverOptions opt;
  opt.jobs = jobs;
  opt.naive = naive;
  SatResult r;
  {
    py::gil_scoped_release release;
    r = decide_sat(f, opt);
  }
  Json j;
  j["sat"] = r.sat;
  j["size_bound"] = formula_size(f);
  if (r.witness) j["witness"] = witness_json(*r.witness);
  return j.dump();
}

std::string valid_json(const std::string& text, const std::string& cls, const std::string& props, int jobs) {
  const UniversalSentence s = parse_universal(text, sig_of(cls, props));
  SolverOptions opt;
  opt.jobs = jobs;
  ValidResult r;
  {
    py::gil_scoped_release release;
    r = decide_valid(s, opt);
  }
  Json j;
  j["valid"] = r.valid;
  if (r.countermodel) j["countermodel"] = witness_json(*r.countermodel);
  return j.dump();
}

std::string certify_json(const std::string& structure) {
  const PartialStructure b = structure_from_json(Json::parse(structure));
  const CertifyResult r = certify(b);
  Json j;
  j["certified"] = static_cast<bool>(r);
  if (r.certificate) j["certificate"] = certificate_to_json(b, *r.certificate);
  if (r.refusal) j["refusal"] = {{"stage", std::string(to_string(r.refusal->stage))}, {"reason", r.refusal->reason}};
  return j.dump();
}

std::string solve_tiling(const std::string& instance) {
  const TilingInstance t = tiling_from_json(Json::parse(instance));
  validate_instance(t);
  return solve_game(t) == GameResult::EloiseWins ? "eloise" : "abelard";
}

std::vector<std::size_t> count_algebras(int max_size, const std::string& cls, const std::string& props) {
  const Signature sig = sig_of(cls, props);
  std::vector<std::size_t> counts(max_size + 1, 0);
  enumerate_algebras(max_size, sig.cls, sig.props, [&](const FiniteAlgebra& a) {
    ++counts[a.size];
    return true;
  });
  return counts;
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::vector<std::string> argv = {"brdg"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  const int code = run(argv, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_brdg, m) {
  m.doc() = "Decision procedures for bounded residuated distributive lattice-ordered groupoids";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<SignatureError>(m, "SignatureError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<TilingError>(m, "TilingError", PyExc_ValueError);
  py::register_exception<SizeLimitError>(m, "SizeLimitError", PyExc_RuntimeError);

  m.def("decide_sat_json", &sat_json, py::arg("formula"), py::arg("cls"), py::arg("props") = "",
        py::arg("jobs") = 1, py::arg("naive") = false);
  m.def("decide_valid_json", &valid_json, py::arg("sentence"), py::arg("cls"), py::arg("props") = "",
        py::arg("jobs") = 1);
  m.def("certify_json", &certify_json, py::arg("structure"));
  m.def("solve_tiling", &solve_tiling, py::arg("instance"));
  m.def("count_algebras", &count_algebras, py::arg("max_size"), py::arg("cls"), py::arg("props") = "");
  m.def(
      "formula_size",
      [](const std::string& text, const std::string& cls, const std::string& props) {
        return formula_size(parse_formula(text, sig_of(cls, props)));
      },
      py::arg("formula"), py::arg("cls"), py::arg("props") = "");
  m.def(
      "normalize",
      [](const std::string& text, const std::string& cls, const std::string& props) {
        return print_formula(parse_formula(text, sig_of(cls, props)));
      },
      py::arg("formula"), py::arg("cls"), py::arg("props") = "");
  m.def("run", &run_cli, py::arg("args"));
}
