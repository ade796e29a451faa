#include "relalg/cli.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json_io.hpp"
#include "relalg/checkers.hpp"
#include "relalg/constructions.hpp"
#include "relalg/formula.hpp"
#include "relalg/games.hpp"
#include "relalg/io.hpp"
#include "relalg/synth.hpp"
#include "relalg/term.hpp"
#include "relalg/translate.hpp"

namespace relalg::cli {

namespace {

using detail::json;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Outcome {
  int code = 0;
  std::string status = "ok";
  json report = json::object();
  std::vector<std::string> text;
};

Outcome verdict_outcome(bool pass, const char* pass_status = "pass") {
  Outcome o;
  o.code = pass ? 0 : 1;
  o.status = pass ? pass_status : "fail";
  return o;
}

// ---------------------------------------------------------------------------
// Inputs

Term read_term(const std::string& path) {
  const auto terms = parse_term_file(read_file(path));
  if (terms.size() != 1)
    throw UsageError(path + ": expected exactly one term, found " + std::to_string(terms.size()));
  return terms.front();
}

Formula read_formula(const std::string& path) { return parse_formula(read_file(path)); }

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

// ---------------------------------------------------------------------------
// Report pieces

json pairs_json(const Structure& s, const Relation& r) {
  json out = json::array();
  for (const auto& [a, b] : s.named_pairs(r)) out.push_back({a, b});
  return out;
}

std::string pairs_text(const Structure& s, const Relation& r) {
  std::string out = "{";
  bool first = true;
  for (const auto& [a, b] : s.named_pairs(r)) {
    out += (first ? "(" : ", (") + a + ", " + b + ")";
    first = false;
  }
  return out + "}";
}

std::string compact(const Structure& s) { return detail::structure_json(s).dump(); }

json equivalence_counterexample_json(const Counterexample& c) {
  return {{"structure", detail::structure_json(c.structure)}, {"pair", c.pair}, {"note", c.note}};
}

json check_counterexample_json(const CheckCounterexample& c) {
  json structures = json::array();
  for (const auto& s : c.structures) structures.push_back(detail::structure_json(s));
  json out{{"structures", structures}, {"pair", c.pair}, {"note", c.note}};
  out["map"] = c.map.empty() ? json(nullptr) : json(c.map);
  return out;
}

json bounds_json(const BoundsRecord& b) {
  json out{{"class", b.structure_class},
           {"max_size", b.max_size},
           {"exhaustive", b.exhaustive},
           {"samples", b.samples},
           {"sample_max_size", b.sample_max_size}};
  if (b.pair_max_size) out["pair_max_size"] = *b.pair_max_size;
  return out;
}

std::string verdict_status(const Verdict& v) { return v.pass ? "pass-bounded" : "fail"; }

json verdict_json(const Verdict& v) {
  json out{{"property", std::string(to_string(v.property))},
           {"status", verdict_status(v)},
           {"bounds", bounds_json(v.bounds)},
           {"seed", v.seed}};
  out["counterexample"] = v.counterexample ? check_counterexample_json(*v.counterexample) : json(nullptr);
  return out;
}

std::vector<std::string> verdict_text(const Verdict& v) {
  std::vector<std::string> lines;
  lines.push_back(std::string(to_string(v.property)) + ": " + verdict_status(v) + " (class " +
                  v.bounds.structure_class + ", exhaustive to size " +
                  std::to_string(v.bounds.max_size) + ", " + std::to_string(v.bounds.samples) +
                  " samples)");
  if (v.counterexample) {
    const auto& c = *v.counterexample;
    for (std::size_t i = 0; i < c.structures.size(); ++i)
      lines.push_back("  structure " + std::to_string(i + 1) + ": " + compact(c.structures[i]));
    if (!c.map.empty()) lines.push_back("  map: " + json(c.map).dump());
    if (!c.pair.empty()) lines.push_back("  pair: " + json(c.pair).dump());
    lines.push_back("  " + c.note);
  }
  return lines;
}

json equivalence_json(const EquivalenceReport& r) {
  json out{{"pass", r.pass},
           {"max_size", r.max_size},
           {"exhaustive_structures", r.exhaustive_structures},
           {"samples", r.samples},
           {"sample_max_size", r.sample_max_size},
           {"seed", r.seed}};
  out["counterexample"] = r.counterexample ? equivalence_counterexample_json(*r.counterexample) : json(nullptr);
  return out;
}

json validation_json(const ValidationReport& r) {
  json out{{"pass", r.pass},
           {"class", r.structure_class},
           {"max_size", r.max_size},
           {"exhaustive_structures", r.exhaustive_structures},
           {"samples", r.samples},
           {"sample_max_size", r.sample_max_size},
           {"seed", r.seed}};
  out["counterexample"] = r.counterexample ? equivalence_counterexample_json(*r.counterexample) : json(nullptr);
  return out;
}

std::string short_term(const Term& t) {
  if (t.size() <= 400) return print_term(t);
  return "(" + std::to_string(t.size()) + " nodes; see the JSON report)";
}

// ---------------------------------------------------------------------------
// Commands

struct Options {
  std::string report = "text";
  std::string out;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;

  std::string term_file, formula_file, structure_file;
  std::string x = "x", y = "y";
  std::size_t verify_size = 3;
  std::size_t samples = 0;
  bool samples_set = false;
  std::size_t max_size = 0;
  std::size_t sample_max_size = 0;
  std::size_t pair_max_size = 0;
  std::string signature;
  bool all_structures = false;
  std::string property;

  std::size_t m = 2, m_prime = 3, n = 3, k = 2;
  std::string basis = "fa";
  std::size_t budget = 100000;

  std::size_t symbols = 0;
  std::size_t radius = 1;
  std::size_t auto_radius = 0;
  std::size_t validate_size = 4;

  std::string left, right, left_pebbles, right_pebbles;
  std::size_t rank = 2;

  std::string preset;
};

Outcome cmd_eval(const Options& o) {
  const Structure s = read_structure_file(o.structure_file);
  Outcome out;
  Relation r;
  if (!o.term_file.empty()) {
    const Term t = read_term(o.term_file);
    r = eval(t, s);
    out.report["term"] = print_term(t);
  } else {
    const Formula f = read_formula(o.formula_file);
    r = define_relation(f, o.x, o.y, s, true);
    out.report["formula"] = print_formula(f);
  }
  out.report["relation"] = pairs_json(s, r);
  out.report["pairs"] = r.count();
  out.text.push_back(pairs_text(s, r));
  return out;
}

Outcome cmd_translate_posex(const Options& o) {
  const Formula f = read_formula(o.formula_file);
  const Term t = compile_posex(f, o.x, o.y);
  EquivalenceBounds bounds;
  bounds.max_size = o.verify_size;
  if (o.samples_set) bounds.samples = o.samples;
  if (o.sample_max_size) bounds.sample_max_size = o.sample_max_size;
  const EquivalenceReport r = verify_compilation(f, t, bounds, o.seed);
  Outcome out = verdict_outcome(r.pass);
  out.report["formula"] = print_formula(f);
  out.report["term"] = print_term(t);
  out.report["homsafe_basis"] = uses_only(t, Basis::homsafe());
  out.report["verification"] = equivalence_json(r);
  out.text.push_back("term: " + print_term(t));
  out.text.push_back(std::string("verification: ") + (r.pass ? "pass" : "fail") + " (exhaustive to size " +
                     std::to_string(r.max_size) + ", " + std::to_string(r.samples) + " samples)");
  if (r.counterexample) {
    out.text.push_back("  structure: " + compact(r.counterexample->structure));
    out.text.push_back("  pair: " + json(r.counterexample->pair).dump() + " " + r.counterexample->note);
  }
  return out;
}

Outcome cmd_translate_fo3(const Options& o) {
  const Term t = read_term(o.term_file);
  const Formula f = term_to_fo3(t);
  Outcome out;
  out.report["term"] = print_term(t);
  out.report["formula"] = print_formula(f);
  out.text.push_back(print_formula(f));
  return out;
}

OperationSpec read_operation(const Options& o) {
  if (o.term_file.empty() == o.formula_file.empty())
    throw UsageError("give exactly one of --term and --formula");
  const auto signature = split_list(o.signature);
  if (!o.term_file.empty()) return OperationSpec::of(read_term(o.term_file), signature);
  OperationSpec op = OperationSpec::of(read_formula(o.formula_file), signature);
  op.x = o.x;
  op.y = o.y;
  return op;
}

CheckBounds check_bounds(const Options& o) {
  CheckBounds b;
  if (o.max_size) b.max_size = o.max_size;
  if (o.samples_set) b.samples = o.samples;
  if (o.sample_max_size) b.sample_max_size = o.sample_max_size;
  if (o.pair_max_size) b.pair_max_size = o.pair_max_size;
  b.jobs = o.jobs;
  b.all_structures = o.all_structures;
  return b;
}

Outcome cmd_check(const Options& o) {
  Property p;
  try {
    p = parse_property(o.property);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const OperationSpec op = read_operation(o);
  const Verdict v = check(op, p, check_bounds(o), o.seed);
  Outcome out = verdict_outcome(v.pass, "pass-bounded");
  out.report = verdict_json(v);
  out.report["operation"] = op.describe();
  out.report["signature"] = op.signature;
  out.text = verdict_text(v);
  return out;
}

Outcome table1_outcome(const CheckBounds& bounds, std::uint64_t seed) {
  const Table1Report t = table1_matrix(bounds, seed);
  Outcome out = verdict_outcome(t.matches);
  json rows = json::array();
  out.text.push_back("operation            homsafe  subsafe  fp       forward");
  for (const auto& row : t.rows) {
    json cells = json::object();
    std::string line = row.name;
    line.resize(21, ' ');
    for (std::size_t c = 0; c < kTable1Columns.size(); ++c) {
      const Verdict& v = row.verdicts[c];
      json cell = verdict_json(v);
      cell["expected"] = row.expected[c] ? "yes" : "no";
      cell["matches"] = v.pass == row.expected[c];
      cells[std::string(to_string(kTable1Columns[c]))] = std::move(cell);
      std::string mark = v.pass ? "yes" : "no";
      if (v.pass != row.expected[c]) mark += " (!)";
      mark.resize(9, ' ');
      line += mark;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out.text.push_back(line);
    rows.push_back({{"name", row.name}, {"term", print_term(row.term)}, {"verdicts", cells}});
  }
  out.report["rows"] = rows;
  out.report["matches"] = t.matches;
  if (!t.matches) out.text.push_back("cells marked (!) differ from the expected pattern");
  return out;
}

Outcome cmd_table1(const Options& o) { return table1_outcome(check_bounds(o), o.seed); }

json x_json(const CounterexampleBundle& b) {
  json out = json::array();
  for (const auto& member : b.x)
    out.push_back({{"name", member.name},
                   {"definition", print_term(member.definition)},
                   {"pairs", member.relation.count()}});
  return out;
}

Outcome cmd_construct(const std::string& kind, const Options& o) {
  Outcome out;
  Structure s;
  if (kind == "cm") {
    s = build_cm(o.m);
  } else if (kind == "cmvee") {
    s = build_cm_vee(o.m);
  } else if (kind == "counterexample" || kind == "sink") {
    const CounterexampleBundle b = build_counterexample(o.m, o.m_prime);
    const Relation sep = eval(b.separating, b.c);
    out.report["x"] = x_json(b);
    out.report["separating"] = print_term(b.separating);
    out.report["separating_value"] = pairs_json(b.c, sep);
    out.report["separating_in_x"] = b.find(sep) != nullptr;
    out.text.push_back("separating: " + print_term(b.separating) + " (" + std::to_string(sep.count()) +
                       " pairs, " + (b.find(sep) ? "in X" : "not in X") + ")");
    s = b.c;
    if (kind == "sink") {
      SinkExtension ext = sink_extension(b);
      json recovery = json::object();
      for (const auto& [name, t] : ext.recovery) {
        recovery[name] = print_term(t);
        out.text.push_back(name + " = " + print_term(t));
      }
      out.report["recovery"] = recovery;
      out.report["total_separating"] = print_term(ext.total_separating);
      out.text.push_back("total separating: " + print_term(ext.total_separating));
      s = std::move(ext.structure);
    }
  } else if (kind == "fig2") {
    const Fig2 f = build_fig2(o.n, o.k);
    out.report["anchor"] = f.a;
    out.report["psi"] = print_formula(psi_xy());
    s = f.structure;
  } else {
    throw UsageError("unknown construction: " + kind);
  }
  out.report["elements"] = s.size();
  out.report["structure"] = detail::structure_json(s);
  out.text.insert(out.text.begin(), kind + ": " + std::to_string(s.size()) + " elements");
  if (!o.out.empty()) write_file(o.out, structure_to_json(s) + "\n");
  return out;
}

Outcome cmd_claim2(const Options& o) {
  const CounterexampleBundle b = build_counterexample(o.m, o.m_prime);
  Basis basis;
  try {
    basis = parse_basis(o.basis);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const Claim2Report r = verify_claim2_desk(b, basis, o.budget);
  const Relation sep = eval(b.separating, b.c);
  const bool escapes = b.find(sep) == nullptr;
  Outcome out = verdict_outcome(r.pass && escapes);
  out.report["m"] = o.m;
  out.report["m_prime"] = o.m_prime;
  out.report["basis"] = to_string(basis);
  out.report["basis_function_preserving"] = r.basis_function_preserving;
  out.report["complete"] = r.complete;
  out.report["closure_size"] = r.closure_size;
  out.report["members"] = r.members;
  out.report["subclaim1"] = r.subclaim1;
  out.report["escapee"] = r.escapee ? json(print_term(*r.escapee)) : json(nullptr);
  out.report["separating"] = print_term(b.separating);
  out.report["separating_in_x"] = !escapes;
  out.report["separating_witness"] =
      r.separating_witness ? json(print_term(*r.separating_witness)) : json(nullptr);
  if (!r.basis_function_preserving)
    out.text.push_back("note: basis " + to_string(basis) + " is not function-preserving");
  if (r.pass)
    out.text.push_back("closure = X (" + std::to_string(r.closure_size) + " relations); separating term " +
                       (escapes ? "escapes" : "is in X"));
  else if (r.escapee)
    out.text.push_back("closure escapes X (" + std::to_string(r.closure_size) +
                       " relations); first escapee " + print_term(*r.escapee));
  else
    out.text.push_back("closure budget exhausted after " + std::to_string(r.closure_size) + " relations");
  if (r.separating_witness)
    out.text.push_back("separating relation reached by " + print_term(*r.separating_witness));
  return out;
}

std::vector<std::string> synth_signature(const Term& t, std::size_t n) {
  const auto used = t.signature();
  std::vector<std::string> out(used.begin(), used.end());
  if (n == 0) n = std::max<std::size_t>(out.size(), 1);
  if (out.size() > n)
    throw UsageError("oracle uses " + std::to_string(out.size()) + " symbols but --symbols is " +
                     std::to_string(n));
  for (const char* name : {"f", "g", "h", "i", "j", "k"}) {
    if (out.size() >= n) break;
    if (!used.contains(name)) out.push_back(name);
  }
  std::sort(out.begin(), out.end());
  return out;
}

json synthesis_json(const SynthesisResult& r) {
  json positive = json::array();
  for (const auto& p : r.positive_types)
    positive.push_back({{"type", to_string(p.type)}, {"word", word_string(p.type, p.word)}});
  return {{"term", print_term(r.term)},
          {"term_size", r.term.size()},
          {"radius", r.radius},
          {"types_considered", r.types_considered},
          {"positive_types", positive}};
}

Outcome cmd_synth(const std::string& mode, const Options& o) {
  const bool oriented = mode == "local-injective";
  const Term oracle_term = read_term(o.term_file);
  const OperationSpec oracle = OperationSpec::of(oracle_term, synth_signature(oracle_term, o.symbols));
  SynthesisBounds bounds;
  bounds.max_size = o.validate_size;
  if (o.samples_set) bounds.samples = o.samples;
  if (o.sample_max_size) bounds.sample_max_size = o.sample_max_size;
  const Basis target = oriented ? Basis::inj() : Basis::fwd();

  Outcome out;
  out.report["oracle"] = print_term(oracle_term);
  out.report["mode"] = mode;
  out.report["signature"] = oracle.signature;
  std::optional<SynthesisResult> result;
  std::optional<ValidationReport> validation;
  if (o.auto_radius) {
    const RadiusEstimate est = estimate_radius(oracle, o.auto_radius, oriented, bounds, o.seed);
    json attempts = json::array();
    for (const auto& a : est.attempts) {
      json entry{{"radius", a.radius}, {"pass", a.failure.empty()}};
      if (!a.failure.empty()) entry["failure"] = a.failure;
      if (a.counterexample) entry["counterexample"] = equivalence_counterexample_json(*a.counterexample);
      attempts.push_back(entry);
      out.text.push_back("radius " + std::to_string(a.radius) + ": " +
                         (a.failure.empty() ? "pass" : a.failure));
    }
    out.report["attempts"] = attempts;
    result = est.result;
    if (result) validation = validate_synthesis(oracle, result->term, oriented, bounds, o.seed);
  } else {
    try {
      result = oriented ? synthesize_local_injective(oracle, o.radius) : synthesize_forward(oracle, o.radius);
    } catch (const SynthesisError& e) {
      out.report["error"] = e.what();
      if (e.realization()) out.report["realization"] = detail::structure_json(*e.realization());
      out.text.push_back(e.what());
    }
    if (result) validation = validate_synthesis(oracle, result->term, oriented, bounds, o.seed);
  }
  const bool basis_ok = result && uses_only(result->term, target);
  const bool pass = result && validation && validation->pass && basis_ok;
  out.code = pass ? 0 : 1;
  out.status = pass ? "pass" : "fail";
  out.report["synthesis"] = result ? synthesis_json(*result) : json(nullptr);
  out.report["basis"] = to_string(target);
  out.report["basis_ok"] = basis_ok;
  out.report["validation"] = validation ? validation_json(*validation) : json(nullptr);
  if (result) {
    out.text.push_back("radius " + std::to_string(result->radius) + ": " +
                       std::to_string(result->positive_types.size()) + " of " +
                       std::to_string(result->types_considered) + " types positive");
    out.text.push_back("term: " + short_term(result->term));
  }
  if (validation) {
    out.text.push_back(std::string("validation: ") + (validation->pass ? "pass" : "fail") + " (" +
                       validation->structure_class + " to size " + std::to_string(validation->max_size) +
                       ", " + std::to_string(validation->samples) + " samples)");
    if (validation->counterexample)
      out.text.push_back("  structure: " + compact(validation->counterexample->structure) + " pair " +
                         json(validation->counterexample->pair).dump());
  }
  return out;
}

constexpr const char* kGameNote = "first-order moves only; GSO set moves are not implemented";

Outcome cmd_ef(const Options& o) {
  const Structure a = read_structure_file(o.left);
  const Structure b = read_structure_file(o.right);
  const auto pa = split_list(o.left_pebbles);
  const auto pb = split_list(o.right_pebbles);
  const bool eq = ef_equiv(a, pa, b, pb, o.rank);
  Outcome out;
  out.report["game"] = kGameNote;
  out.report["rank"] = o.rank;
  out.report["equivalent"] = eq;
  out.report["left_pebbles"] = pa;
  out.report["right_pebbles"] = pb;
  out.text.push_back(std::string(eq ? "equivalent" : "distinguished") + " at rank " + std::to_string(o.rank));
  out.text.push_back(std::string("(") + kGameNote + ")");
  return out;
}

Outcome cmd_min_rank(const Options& o) {
  const Structure a = read_structure_file(o.left);
  const Structure b = read_structure_file(o.right);
  const auto r = min_distinguishing_rank(a, b, o.rank);
  Outcome out;
  out.report["game"] = kGameNote;
  out.report["max_rank"] = o.rank;
  out.report["rank"] = r ? json(*r) : json(nullptr);
  out.text.push_back(r ? "distinguished at rank " + std::to_string(*r)
                       : "not distinguished up to rank " + std::to_string(o.rank));
  out.text.push_back(std::string("(") + kGameNote + ")");
  return out;
}

json fv_json(const FvReport& r) {
  json violations = json::array();
  for (const auto& q : r.violations)
    violations.push_back({{"a", detail::structure_json(q.a)},
                          {"a_prime", detail::structure_json(q.a_prime)},
                          {"b", detail::structure_json(q.b)},
                          {"b_prime", detail::structure_json(q.b_prime)}});
  return {{"rank", r.rank},         {"samples", r.samples},
          {"max_size", r.max_size}, {"seed", r.seed},
          {"premises_held", r.premises_held}, {"skipped", r.skipped},
          {"violations", violations}};
}

Outcome cmd_fv(const Options& o) {
  const FvReport r = check_fv_disjoint_union(o.rank, o.samples_set ? o.samples : 100,
                                             o.max_size ? o.max_size : 4, o.seed);
  Outcome out = verdict_outcome(r.violations.empty());
  out.report = fv_json(r);
  out.report["game"] = kGameNote;
  out.text.push_back(std::to_string(r.premises_held) + " quadruples with both premises, " +
                     std::to_string(r.skipped) + " skipped, " + std::to_string(r.violations.size()) +
                     " violations");
  return out;
}

// ---------------------------------------------------------------------------
// Presets

Outcome preset_separation() {
  Outcome out;
  bool pass = true;
  auto note = [&](const std::string& what, bool ok) {
    out.report["checks"][what] = ok;
    out.text.push_back((ok ? "ok    " : "FAIL  ") + what);
    pass = pass && ok;
  };
  const CounterexampleBundle b = build_counterexample(2, 3);
  const Claim2Report fa = verify_claim2_desk(b, Basis::fa());
  note("FA closure of {f, g} is exactly X", fa.pass && fa.closure_size == b.x.size());
  const Relation sep = eval(b.separating, b.c);
  Relation predicted(b.c.size());
  for (std::size_t i = 0; i < b.c.size(); ++i) {
    const std::string& e = b.c.element(i);
    if (e.rfind("L:a", 0) == 0) predicted.insert(i, i);
  }
  note("separating term denotes id on the C_2 normal nodes", sep == predicted);
  note("separating relation is outside X", b.find(sep) == nullptr);
  const Claim2Report conv = verify_claim2_desk(b, Basis::fa().with(Op::Converse));
  note("FA + converse closure escapes X", !conv.pass && conv.escapee.has_value());

  SinkExtension ext = sink_extension(b);
  note("sink extension consists of total functions", in_class(ext.structure, StructureClass::TotalFunctions));
  bool recovered = true;
  for (const char* name : {"f", "g"})
    recovered = recovered && ext.structure.named_pairs(eval(ext.recovery.at(name), ext.structure)) ==
                                 b.c.named_pairs(b.c.relation(name));
  note("recovery terms give back f and g", recovered);
  const Relation total = eval(ext.total_separating, ext.structure);
  Relation expected(ext.structure.size());
  const std::size_t sink = ext.structure.index_of("s");
  for (std::size_t i = 0; i < ext.structure.size(); ++i) {
    if (i < b.c.size() && sep.contains(i, i)) expected.insert(i, i);
    else expected.insert(i, sink);
  }
  note("total separating term is the predicted total function", total == expected && total.is_total_function());
  out.code = pass ? 0 : 1;
  out.status = pass ? "pass" : "fail";
  return out;
}

Outcome preset_fig2() {
  Outcome out;
  bool pass = true;
  const Formula psi = psi_xy();
  for (std::size_t m = 1; m <= 3; ++m) {
    const Fig2 f = build_fig2(m + 1, 2);
    const Structure b = remove_b0(f.structure);
    const Assignment aa{{"x", f.a}, {"y", f.a}};
    const bool in_a = eval_formula(psi, f.structure, aa);
    const bool in_b = eval_formula(psi, b, aa);
    const Structure ball_a = ball(f.structure, f.a, m, Reach::Forward);
    const Structure ball_b = ball(b, f.a, m, Reach::Forward);
    const bool iso =
        isomorphism(ball_a, {ball_a.index_of(f.a)}, ball_b, {ball_b.index_of(f.a)}).has_value();
    const bool ok = in_a && !in_b && iso;
    pass = pass && ok;
    out.report["runs"].push_back({{"m", m}, {"psi_A", in_a}, {"psi_B", in_b}, {"balls_isomorphic", iso}});
    out.text.push_back("m=" + std::to_string(m) + ": A |= psi(a,a) " + (in_a ? "yes" : "no") +
                       ", B |= psi(a,a) " + (in_b ? "yes" : "no") + ", balls isomorphic " +
                       (iso ? "yes" : "no"));
  }
  out.code = pass ? 0 : 1;
  out.status = pass ? "pass" : "fail";
  return out;
}

Outcome preset_synthesis(std::uint64_t seed) {
  Outcome out;
  bool pass = true;
  const SynthesisBounds bounds;
  for (const bool oriented : {false, true}) {
    const auto& catalog = oriented ? injective_catalog() : forward_catalog();
    const Basis target = oriented ? Basis::inj() : Basis::fwd();
    for (const auto& text : catalog) {
      const OperationSpec oracle = OperationSpec::of(parse_term(text));
      const RadiusEstimate est = estimate_radius(oracle, 2, oriented, bounds, seed);
      const bool ok = est.result && uses_only(est.result->term, target);
      pass = pass && ok;
      json entry{{"oracle", text}, {"mode", oriented ? "local-injective" : "forward"}, {"pass", ok}};
      entry["radius"] = est.radius ? json(*est.radius) : json(nullptr);
      if (est.result) entry["term_size"] = est.result->term.size();
      out.report["runs"].push_back(entry);
      out.text.push_back(std::string(ok ? "ok    " : "FAIL  ") + (oriented ? "local-injective " : "forward ") +
                         text + (est.radius ? " radius " + std::to_string(*est.radius) : ""));
    }
  }
  out.code = pass ? 0 : 1;
  out.status = pass ? "pass" : "fail";
  return out;
}

Outcome preset_fv(std::uint64_t seed) {
  const FvReport r = check_fv_disjoint_union(2, 100, 4, seed);
  Structure loop({"1"}, {"E"});
  loop.add_pair("E", "1", "1");
  const Structure no_loop({"1"}, {"E"});
  const auto rank = min_distinguishing_rank(loop, no_loop, 3);
  const bool pass = r.violations.empty() && rank == std::optional<std::size_t>(1);
  Outcome out = verdict_outcome(pass);
  out.report["fv"] = fv_json(r);
  out.report["loop_rank"] = rank ? json(*rank) : json(nullptr);
  out.report["game"] = kGameNote;
  out.text.push_back("fv-check rank 2: " + std::to_string(r.premises_held) + " premises held, " +
                     std::to_string(r.violations.size()) + " violations");
  out.text.push_back("min distinguishing rank (loop, no loop): " + (rank ? std::to_string(*rank) : "none"));
  return out;
}

Outcome cmd_run(const Options& o) {
  if (o.preset == "paper:table1") {
    CheckBounds bounds;
    bounds.max_size = 3;
    bounds.jobs = o.jobs;
    return table1_outcome(bounds, o.seed);
  }
  if (o.preset == "paper:separation") return preset_separation();
  if (o.preset == "paper:fig2") return preset_fig2();
  if (o.preset == "paper:synthesis") return preset_synthesis(o.seed);
  if (o.preset == "paper:fv-lemma") return preset_fv(o.seed);
  throw UsageError("unknown preset: " + o.preset);
}

std::string echo(const std::vector<std::string>& args) {
  std::string out;
  for (const auto& a : args) out += (out.empty() ? "" : " ") + a;
  return out;
}

}  // namespace

std::vector<std::string> preset_experiments() {
  return {"paper:table1", "paper:separation", "paper:fig2", "paper:synthesis", "paper:fv-lemma"};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Relation algebra workbench for finite structures", "relalg");
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--report", o.report, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", o.out, "Write the report (construct: the structure) to FILE");
  app.add_option("--seed", o.seed, "Seed for all randomness");
  app.add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto samples = [&](CLI::App* sub) {
    sub->add_option_function<std::size_t>("--samples", [&](const std::size_t& v) {
      o.samples = v;
      o.samples_set = true;
    }, "Random samples");
  };

  std::function<Outcome()> action;

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a term or formula on a structure");
  auto* eval_term = eval_cmd->add_option("--term", o.term_file, "Term file");
  auto* eval_formula_opt = eval_cmd->add_option("--formula", o.formula_file, "Formula file");
  eval_term->excludes(eval_formula_opt);
  eval_cmd->add_option("--structure", o.structure_file, "Structure JSON file")->required();
  eval_cmd->add_option("--x", o.x, "Source variable");
  eval_cmd->add_option("--y", o.y, "Target variable");
  eval_cmd->callback([&] {
    if (o.term_file.empty() && o.formula_file.empty()) throw UsageError("eval needs --term or --formula");
    action = [&] { return cmd_eval(o); };
  });

  auto* translate = app.add_subcommand("translate", "Translate between formulas and terms");
  translate->require_subcommand(1);
  auto* posex = translate->add_subcommand("posex-to-term", "Compile a positive-existential FO3 formula");
  posex->add_option("--formula", o.formula_file, "Formula file")->required();
  posex->add_option("--verify-size", o.verify_size, "Exhaustive verification size");
  posex->add_option("--sample-max-size", o.sample_max_size, "Largest random sample");
  posex->add_option("--x", o.x, "Source variable");
  posex->add_option("--y", o.y, "Target variable");
  samples(posex);
  posex->callback([&] { action = [&] { return cmd_translate_posex(o); }; });
  auto* fo3 = translate->add_subcommand("term-to-fo3", "Translate a term to an FO3 formula");
  fo3->add_option("--term", o.term_file, "Term file")->required();
  fo3->callback([&] { action = [&] { return cmd_translate_fo3(o); }; });

  auto* check_cmd = app.add_subcommand("check", "Bounded check of a semantic property");
  check_cmd->add_option("property", o.property, "fp, tfp, ifp, homsafe, subsafe, forward or local")->required();
  check_cmd->add_option("--term", o.term_file, "Term file");
  check_cmd->add_option("--formula", o.formula_file, "Formula file");
  check_cmd->add_option("--x", o.x, "Source variable");
  check_cmd->add_option("--y", o.y, "Target variable");
  check_cmd->add_option("--signature", o.signature, "Comma-separated symbols");
  check_cmd->add_option("--max-size", o.max_size, "Exhaustive size bound");
  check_cmd->add_option("--sample-max-size", o.sample_max_size, "Largest random sample");
  check_cmd->add_option("--pair-max-size", o.pair_max_size, "Exhaustive size bound for homsafe pairs");
  check_cmd->add_flag("--all-structures", o.all_structures, "forward/local over all structures");
  samples(check_cmd);
  check_cmd->callback([&] { action = [&] { return cmd_check(o); }; });

  auto* table1 = app.add_subcommand("table1", "Reproduce the operation property matrix");
  table1->add_option("--max-size", o.max_size, "Exhaustive size bound");
  table1->add_option("--sample-max-size", o.sample_max_size, "Largest random sample");
  samples(table1);
  table1->callback([&] { action = [&] { return cmd_table1(o); }; });

  auto* construct = app.add_subcommand("construct", "Build a named structure");
  std::string kind;
  construct->add_option("kind", kind, "cm, cmvee, counterexample, sink or fig2")
      ->required()
      ->check(CLI::IsMember({"cm", "cmvee", "counterexample", "sink", "fig2"}));
  construct->add_option("--m", o.m, "Cycle length");
  construct->add_option("--mprime", o.m_prime, "Second cycle length");
  construct->add_option("--n", o.n, "fig2 chain parameter n");
  construct->add_option("--k", o.k, "fig2 loop parameter k");
  construct->callback([&] { action = [&] { return cmd_construct(kind, o); }; });

  auto* verify = app.add_subcommand("verify", "Replay a construction claim");
  verify->require_subcommand(1);
  auto* claim2 = verify->add_subcommand("claim2", "Closure of {f, g} on the counterexample structure");
  claim2->add_option("--m", o.m, "Cycle length");
  claim2->add_option("--mprime", o.m_prime, "Second cycle length");
  claim2->add_option("--basis", o.basis, "Basis, e.g. fa or fa+converse");
  claim2->add_option("--budget", o.budget, "Closure size budget");
  claim2->callback([&] { action = [&] { return cmd_claim2(o); }; });

  auto* synth = app.add_subcommand("synth", "Synthesize a term from an oracle");
  synth->require_subcommand(1);
  for (const char* mode : {"forward", "local-injective"}) {
    auto* sub = synth->add_subcommand(mode, std::string("Synthesis, ") + mode);
    sub->add_option("--oracle-term", o.term_file, "Oracle term file")->required();
    sub->add_option("--symbols", o.symbols, "Number of symbols");
    sub->add_option("--radius", o.radius, "Ball radius");
    sub->add_option("--auto-radius", o.auto_radius, "Search radii 0..MAX");
    sub->add_option("--validate-size", o.validate_size, "Exhaustive validation size");
    sub->add_option("--sample-max-size", o.sample_max_size, "Largest random sample");
    samples(sub);
    const std::string name = mode;
    sub->callback([&, name] { action = [&, name] { return cmd_synth(name, o); }; });
  }

  auto* ef = app.add_subcommand("ef", "Ehrenfeucht-Fraisse games");
  ef->require_subcommand(0, 1);
  ef->add_option("--left", o.left, "Left structure file");
  ef->add_option("--right", o.right, "Right structure file");
  ef->add_option("--rank", o.rank, "Number of rounds");
  ef->add_option("--left-pebbles", o.left_pebbles, "Comma-separated pebbled elements");
  ef->add_option("--right-pebbles", o.right_pebbles, "Comma-separated pebbled elements");
  auto* min_rank = ef->add_subcommand("min-rank", "Least distinguishing rank");
  min_rank->add_option("--left", o.left, "Left structure file")->required();
  min_rank->add_option("--right", o.right, "Right structure file")->required();
  min_rank->add_option("--max-rank", o.rank, "Largest rank tried");
  min_rank->callback([&] { action = [&] { return cmd_min_rank(o); }; });
  auto* fv = ef->add_subcommand("fv-check", "Disjoint-union composition check");
  fv->add_option("--rank", o.rank, "Rank");
  fv->add_option("--max-size", o.max_size, "Largest sampled structure");
  samples(fv);
  fv->callback([&] { action = [&] { return cmd_fv(o); }; });
  ef->callback([&] {
    if (action) return;
    if (o.left.empty() || o.right.empty()) throw UsageError("ef needs --left and --right");
    action = [&] { return cmd_ef(o); };
  });

  auto* run_cmd = app.add_subcommand("run", "Run a named experiment preset");
  run_cmd->add_option("preset", o.preset, "Preset name")->required();
  run_cmd->callback([&] { action = [&] { return cmd_run(o); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (!action) {
    err << "error: nothing to do\n" << app.help();
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = action();
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);

  std::string rendered;
  if (o.report == "json") {
    json report = outcome.report;
    if (!report.contains("status")) report["status"] = outcome.status;
    report["schema"] = 1;
    report["command"] = echo(args);
    report["seed"] = report.contains("seed") ? report["seed"] : json(o.seed);
    report["wall_time_ms"] = elapsed.count();
    rendered = report.dump(2) + "\n";
  } else {
    for (const auto& line : outcome.text) rendered += line + "\n";
    rendered += "status: " + outcome.status + "\n";
  }
  // construct writes the structure itself to --out; other commands write the report
  try {
    if (!o.out.empty() && !construct->parsed()) write_file(o.out, rendered);
    else out << rendered;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return outcome.code;
}

}  // namespace relalg::cli
