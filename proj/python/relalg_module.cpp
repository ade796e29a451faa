#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "relalg/checkers.hpp"
#include "relalg/cli.hpp"
#include "relalg/constructions.hpp"
#include "relalg/games.hpp"
#include "relalg/io.hpp"
#include "relalg/synth.hpp"
#include "relalg/translate.hpp"

namespace py = pybind11;
using namespace relalg;

namespace {

using Pairs = std::vector<std::pair<std::string, std::string>>;

Structure make_structure(std::vector<std::string> domain, const std::map<std::string, Pairs>& relations) {
  return Structure::from_named_pairs(std::move(domain), relations);
}

std::map<std::string, Pairs> relations_of(const Structure& s) {
  std::map<std::string, Pairs> out;
  for (const auto& [name, r] : s.relations()) out[name] = s.named_pairs(r);
  return out;
}

py::dict counterexample_dict(const CheckCounterexample& c) {
  py::dict d;
  d["structures"] = c.structures;
  d["map"] = c.map;
  d["pair"] = c.pair;
  d["note"] = c.note;
  return d;
}

py::dict verdict_dict(const Verdict& v) {
  py::dict d;
  d["property"] = std::string(to_string(v.property));
  d["status"] = v.pass ? "pass-bounded" : "fail";
  d["pass"] = v.pass;
  d["counterexample"] = v.counterexample ? py::object(counterexample_dict(*v.counterexample)) : py::none();
  py::dict b;
  b["class"] = v.bounds.structure_class;
  b["max_size"] = v.bounds.max_size;
  b["exhaustive"] = v.bounds.exhaustive;
  b["samples"] = v.bounds.samples;
  b["sample_max_size"] = v.bounds.sample_max_size;
  d["bounds"] = b;
  d["seed"] = v.seed;
  return d;
}

CheckBounds bounds_of(std::optional<std::size_t> max_size, std::size_t samples, std::size_t jobs) {
  CheckBounds b;
  b.max_size = max_size;
  b.samples = samples;
  b.jobs = jobs;
  return b;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Relation algebra on finite structures";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  py::class_<Structure>(m, "Structure")
      .def(py::init(&make_structure), py::arg("domain"), py::arg("relations") = std::map<std::string, Pairs>{})
      .def_property_readonly("domain", &Structure::domain)
      .def_property_readonly("signature", &Structure::signature)
      .def_property_readonly("relations", &relations_of)
      .def("relation", [](const Structure& s, const std::string& name) { return s.named_pairs(s.relation(name)); })
      .def("to_json", [](const Structure& s) { return structure_to_json(s); })
      .def_static("from_json", [](const std::string& text) { return parse_structure(text); })
      .def("__len__", &Structure::size)
      .def("__eq__", &Structure::operator==)
      .def("__repr__", [](const Structure& s) { return "Structure(" + structure_to_json(s, -1) + ")"; });

  py::class_<Term>(m, "Term")
      .def(py::init([](const std::string& text) { return parse_term(text); }))
      .def_property_readonly("size", &Term::size)
      .def_property_readonly("symbols", &Term::signature)
      .def("uses_only", [](const Term& t, const std::string& basis) { return uses_only(t, parse_basis(basis)); })
      .def("__eq__", &Term::operator==)
      .def("__str__", &print_term)
      .def("__repr__", [](const Term& t) { return "Term('" + print_term(t) + "')"; });

  m.def("parse_term", [](const std::string& text) { return print_term(parse_term(text)); },
        "Canonical printed form of a term");
  m.def("eval_term",
        [](const std::string& term, const Structure& s) { return s.named_pairs(eval(parse_term(term), s)); },
        py::arg("term"), py::arg("structure"));
  m.def("define_relation",
        [](const std::string& formula, const Structure& s, const std::string& x, const std::string& y) {
          return s.named_pairs(define_relation(parse_formula(formula), x, y, s, true));
        },
        py::arg("formula"), py::arg("structure"), py::arg("x") = "x", py::arg("y") = "y");
  m.def("compile_posex", [](const std::string& formula) { return print_term(compile_posex(parse_formula(formula))); });
  m.def("term_to_fo3", [](const std::string& term) { return print_formula(term_to_fo3(parse_term(term))); });
  m.def("normalize_fp", [](const std::string& term) { return print_term(normalize_fp(parse_term(term))); });

  m.def("check",
        [](const std::string& property, const std::string& term, std::vector<std::string> signature,
           std::optional<std::size_t> max_size, std::size_t samples, std::uint64_t seed, std::size_t jobs) {
          const OperationSpec op = OperationSpec::of(parse_term(term), std::move(signature));
          return verdict_dict(check(op, parse_property(property), bounds_of(max_size, samples, jobs), seed));
        },
        py::arg("property"), py::arg("term"), py::arg("signature") = std::vector<std::string>{},
        py::arg("max_size") = py::none(), py::arg("samples") = 1000, py::arg("seed") = 0, py::arg("jobs") = 1);
  m.def("table1",
        [](std::optional<std::size_t> max_size, std::size_t samples, std::uint64_t seed, std::size_t jobs) {
          const Table1Report r = table1_matrix(bounds_of(max_size, samples, jobs), seed);
          py::list rows;
          for (const auto& row : r.rows) {
            py::dict d;
            d["name"] = row.name;
            d["term"] = print_term(row.term);
            py::list verdicts;
            for (const auto& v : row.verdicts) verdicts.append(verdict_dict(v));
            d["verdicts"] = verdicts;
            d["expected"] = row.expected;
            rows.append(d);
          }
          py::dict out;
          out["rows"] = rows;
          out["matches"] = r.matches;
          return out;
        },
        py::arg("max_size") = 3, py::arg("samples") = 1000, py::arg("seed") = 0, py::arg("jobs") = 1);

  m.def("build_cm", &build_cm, py::arg("m"));
  m.def("build_cm_vee", &build_cm_vee, py::arg("m"));
  m.def("build_fig2", [](std::size_t n, std::size_t k) { return build_fig2(n, k).structure; },
        py::arg("n"), py::arg("k"));
  m.def("verify_claim2",
        [](std::size_t mm, std::size_t m_prime, const std::string& basis, std::size_t budget) {
          const CounterexampleBundle b = build_counterexample(mm, m_prime);
          const Claim2Report r = verify_claim2_desk(b, parse_basis(basis), budget);
          py::dict d;
          d["pass"] = r.pass;
          d["complete"] = r.complete;
          d["closure_size"] = r.closure_size;
          d["members"] = r.members;
          d["escapee"] = r.escapee ? py::object(py::str(print_term(*r.escapee))) : py::none();
          d["separating_in_x"] = b.find(eval(b.separating, b.c)) != nullptr;
          return d;
        },
        py::arg("m") = 2, py::arg("mprime") = 3, py::arg("basis") = "fa", py::arg("budget") = 100000);

  m.def("synthesize",
        [](const std::string& term, const std::string& mode, std::size_t radius) {
          const OperationSpec op = OperationSpec::of(parse_term(term));
          if (mode == "forward") return print_term(synthesize_forward(op, radius).term);
          if (mode == "local-injective") return print_term(synthesize_local_injective(op, radius).term);
          throw Error("unknown synthesis mode: " + mode);
        },
        py::arg("term"), py::arg("mode") = "forward", py::arg("radius") = 1);

  m.def("ef_equiv",
        [](const Structure& a, const Structure& b, std::size_t rank, const std::vector<std::string>& pa,
           const std::vector<std::string>& pb) { return ef_equiv(a, pa, b, pb, rank); },
        py::arg("a"), py::arg("b"), py::arg("rank"), py::arg("pebbles_a") = std::vector<std::string>{},
        py::arg("pebbles_b") = std::vector<std::string>{});
  m.def("min_distinguishing_rank",
        [](const Structure& a, const Structure& b, std::size_t max_rank) {
          return min_distinguishing_rank(a, b, max_rank);
        },
        py::arg("a"), py::arg("b"), py::arg("max_rank") = 4);

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int code = cli::run(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        "Run one command line; returns (exit code, stdout, stderr)");
  m.def("presets", &cli::preset_experiments);
}
