// One line per acceptance criterion. Exit status is 0 when the failing
// criteria are exactly those named with --expect-fail.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "laws.hpp"
#include "relalg/checkers.hpp"
#include "relalg/constructions.hpp"
#include "relalg/formula.hpp"
#include "relalg/games.hpp"
#include "relalg/synth.hpp"
#include "relalg/translate.hpp"

using namespace relalg;

namespace {

struct Result {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  std::function<Result()> run;
};

class Tally {
 public:
  void check(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  Result result(const std::string& summary) const {
    if (failures_.empty()) return {true, summary};
    std::string detail = std::to_string(failures_.size()) + " failed: " + failures_.front();
    for (std::size_t i = 1; i < failures_.size() && i < 4; ++i) detail += "; " + failures_[i];
    if (failures_.size() > 4) detail += "; ...";
    return {false, detail};
  }

 private:
  std::vector<std::string> failures_;
};

Basis all_operations() {
  Basis b;
  for (std::size_t i = 1; i < kOpCount; ++i) b.insert(static_cast<Op>(i));
  return b;
}

Result laws() {
  Tally t;
  for (const auto& law : testing::definitional_laws())
    if (const auto s = testing::law_counterexample(law, 3))
      t.check(false, law.left + " = " + law.right + " on " + std::to_string(s->size()) + " elements");
  return t.result(std::to_string(testing::definitional_laws().size()) + " identities, all structures to size 3");
}

Result table1(std::uint64_t seed) {
  CheckBounds bounds;
  bounds.max_size = 3;
  const Table1Report r = table1_matrix(bounds, seed);
  Tally t;
  std::size_t cells = 0;
  for (const auto& row : r.rows)
    for (std::size_t c = 0; c < kTable1Columns.size(); ++c) {
      ++cells;
      const Verdict& v = row.verdicts[c];
      const std::string cell = row.name + "/" + std::string(to_string(kTable1Columns[c]));
      t.check(v.pass == row.expected[c], cell + (v.pass ? " yes, expected no" : " no, expected yes"));
      if (v.pass) continue;
      const bool witnessed = v.counterexample &&
                             v.counterexample->structures.front().size() <= 4 &&
                             reverify(OperationSpec::of(row.term), kTable1Columns[c], *v.counterexample);
      t.check(witnessed, cell + " lacks a re-verified witness of size <= 4");
    }
  return t.result(std::to_string(r.rows.size()) + "x4 = " + std::to_string(cells) + " cells match");
}

Result compiler(std::uint64_t seed) {
  Rng rng(seed);
  EquivalenceBounds bounds;
  bounds.max_size = 3;
  bounds.samples = 500;
  bounds.sample_max_size = 8;
  Tally t;
  for (int i = 0; i < 200; ++i) {
    const Formula f = random_posex_formula(rng, {"R", "S", "Q"}, 4);
    const Term term = compile_posex(f);
    t.check(uses_only(term, Basis::homsafe()), "non-homsafe output for " + print_formula(f));
    t.check(verify_compilation(f, term, bounds, mix_seed(seed, i)).pass, "wrong output for " + print_formula(f));
  }
  return t.result("200 formulas compiled and verified");
}

Result separation() {
  const CounterexampleBundle b = build_counterexample(2, 3);
  Tally t;
  const Claim2Report fa = verify_claim2_desk(b, Basis::fa());
  t.check(fa.pass && fa.closure_size == 8, "FA closure is not X");
  const Relation sep = eval(b.separating, b.c);
  Relation expected(b.c.size());
  for (std::size_t i = 0; i < b.c.size(); ++i)
    if (b.c.element(i).rfind("L:a", 0) == 0) expected.insert(i, i);
  t.check(expected.count() == 6 && sep == expected, "separating value is not id on C_2 normal nodes");
  t.check(b.find(sep) == nullptr, "separating relation lies in X");
  const Claim2Report conv = verify_claim2_desk(b, Basis::fa().with(Op::Converse));
  t.check(!conv.pass && conv.escapee.has_value(), "closure with converse stays in X");
  return t.result("closure = X (8 relations); separating term escapes; converse escapes X");
}

Result total_variant() {
  const CounterexampleBundle b = build_counterexample(2, 3);
  const SinkExtension ext = sink_extension(b);
  const Structure& s = ext.structure;
  Tally t;
  for (const char* name : {"fhat", "ghat", "ehat"})
    t.check(s.relation(name).is_total_function(), std::string(name) + " is not total");
  for (const char* name : {"f", "g"})
    t.check(s.named_pairs(eval(ext.recovery.at(name), s)) == b.c.named_pairs(b.c.relation(name)),
            std::string("recovery of ") + name + " differs");
  const Relation sep = eval(b.separating, b.c);
  const std::size_t sink = s.index_of("s");
  Relation expected(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    expected.insert(i, i < b.c.size() && sep.contains(i, i) ? i : sink);
  const Relation total = eval(ext.total_separating, s);
  t.check(total.is_total_function() && total == expected, "total separating relation differs");
  return t.result("three total functions; recovery exact; total separating term as predicted");
}

Result normalizer(std::uint64_t seed) {
  Rng rng(seed);
  const Basis basis = all_operations();
  Tally t;
  std::size_t functional = 0;
  for (int i = 0; i < 1000; ++i) {
    const Term term = random_term(rng, basis, {"f", "g"}, 4);
    const Structure s = random_structure(rng.next(), 1 + rng.below(6), {"f", "g"}, StructureClass::All);
    const Relation value = eval(term, s);
    const Relation normal = eval(normalize_fp(term), s);
    t.check(normal.is_partial_function(), "not a partial function: " + print_term(term));
    if (value.is_partial_function()) {
      ++functional;
      t.check(normal == value, "changed a partial function: " + print_term(term));
    }
  }
  return t.result("1000 terms; " + std::to_string(functional) + " already functional, unchanged");
}

Result synthesis(bool oriented, std::uint64_t seed) {
  const auto& catalog = oriented ? injective_catalog() : forward_catalog();
  const Basis target = oriented ? Basis::inj() : Basis::fwd();
  const SynthesisBounds bounds{.max_size = 4, .samples = 1000, .sample_max_size = 12};
  Tally t;
  std::ostringstream radii;
  for (const auto& text : catalog) {
    const OperationSpec oracle = OperationSpec::of(parse_term(text));
    const RadiusEstimate est = estimate_radius(oracle, 2, oriented, bounds, seed);
    if (!est.result) {
      t.check(false, text + " not synthesized at radius <= 2");
      continue;
    }
    t.check(uses_only(est.result->term, target), text + " uses operations outside the basis");
    radii << (radii.tellp() > 0 ? ", " : "") << text << ":" << *est.radius;
  }
  return t.result(std::to_string(catalog.size()) + " oracles (" + radii.str() + ")");
}

Result fig2() {
  Tally t;
  for (std::size_t m = 1; m <= 3; ++m) {
    const Fig2 f = build_fig2(m + 1, 2);
    const Structure b = remove_b0(f.structure);
    const Assignment aa{{"x", f.a}, {"y", f.a}};
    const std::string tag = "m=" + std::to_string(m);
    t.check(eval_formula(psi_xy(), f.structure, aa), tag + ": A does not satisfy psi(a,a)");
    t.check(!eval_formula(psi_xy(), b, aa), tag + ": B satisfies psi(a,a)");
    const Structure ba = ball(f.structure, f.a, m, Reach::Forward);
    const Structure bb = ball(b, f.a, m, Reach::Forward);
    t.check(isomorphism(ba, {ba.index_of(f.a)}, bb, {bb.index_of(f.a)}).has_value(),
            tag + ": balls differ");
  }
  return t.result("m = 1, 2, 3: A |= psi(a,a), B does not, balls isomorphic");
}

Result games(std::uint64_t seed) {
  Tally t;
  Rng rng(seed);
  for (int i = 0; i < 200; ++i) {
    const Structure a = random_structure(rng.next(), 1 + rng.below(4), {"E"}, StructureClass::All);
    const Structure b = random_structure(rng.next(), 1 + rng.below(4), {"E"}, StructureClass::All);
    const std::string tag = "structure " + std::to_string(i);
    for (std::size_t r = 0; r <= 3; ++r) t.check(ef_equiv(a, {}, a, {}, r), tag + " not self-equivalent");
    t.check(ef_equiv(a, {a.element(0)}, a, {a.element(0)}, 2), tag + " not self-equivalent with a pebble");
    for (std::size_t r = 0; r < 3; ++r)
      t.check(!ef_equiv(a, {}, b, {}, r + 1) || ef_equiv(a, {}, b, {}, r), tag + " breaks antitonicity");
  }
  const FvReport fv = check_fv_disjoint_union(2, 100, 4, seed);
  t.check(fv.violations.empty(), std::to_string(fv.violations.size()) + " disjoint-union violations");
  const Structure loop = Structure::from_named_pairs({"1"}, {{"E", {{"1", "1"}}}});
  const Structure plain = Structure::from_named_pairs({"1"}, {{"E", {}}});
  t.check(min_distinguishing_rank(loop, plain, 3) == 1u, "loop rank is not 1");
  return t.result("200 structures; fv-check " + std::to_string(fv.premises_held) + " held, " +
                  std::to_string(fv.skipped) + " skipped, 0 violations; loop rank 1");
}

Result chi() {
  Tally t;
  std::size_t checks = 0;
  for (std::size_t m = 0; m <= 2; ++m) {
    const auto types = enumerate_types({"f"}, m, false);
    std::vector<CompiledTerm> chis;
    for (const auto& type : types) chis.emplace_back(chi_term(type));
    StructureStream stream({"f"}, 5, StructureClass::PartialFunctions);
    Structure s;
    while (stream.next(s)) {
      std::vector<Relation> values;
      for (auto& c : chis) values.push_back(c.eval(s));
      for (std::size_t a = 0; a < s.size(); ++a) {
        const NeighborhoodType actual = neighborhood_type(s, s.element(a), m, false);
        for (std::size_t i = 0; i < types.size(); ++i) {
          ++checks;
          if (values[i].contains(a, a) != (types[i] == actual))
            t.check(false, "m=" + std::to_string(m) + " type " + to_string(types[i]));
        }
      }
    }
  }
  return t.result(std::to_string(checks) + " memberships over all K_pf structures to size 5, m <= 2");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("Acceptance suite");
  std::vector<int> expect_fail;
  std::vector<int> only;
  std::uint64_t seed = 0;
  app.add_option("--expect-fail", expect_fail, "Criteria known to fail");
  app.add_option("--only", only, "Run only these criteria");
  app.add_option("--seed", seed, "Seed");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "algebraic laws", laws},
      {2, "operation property matrix", [&] { return table1(seed); }},
      {3, "positive-existential compiler", [&] { return compiler(seed); }},
      {4, "separation replay", separation},
      {5, "total separation variant", total_variant},
      {6, "normalizer", [&] { return normalizer(seed); }},
      {7, "forward synthesis", [&] { return synthesis(false, seed); }},
      {8, "local injective synthesis", [&] { return synthesis(true, seed); }},
      {9, "figure-2 replay", fig2},
      {10, "games", [&] { return games(seed); }},
      {11, "chi characterization", chi},
  };
  const std::set<int> expected(expect_fail.begin(), expect_fail.end());
  const std::set<int> selected(only.begin(), only.end());
  std::set<int> failed;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.contains(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("error: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!r.pass) failed.insert(c.id);
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(1);
    line << (r.pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.name << ": " << r.detail << " ("
         << seconds << " s)";
    if (!r.pass && expected.contains(c.id)) line << " [known]";
    std::cout << line.str() << std::endl;
  }
  std::set<int> expected_run;
  for (int id : expected)
    if (selected.empty() || selected.contains(id)) expected_run.insert(id);
  std::cout << failed.size() << " failing; expected " << expected_run.size() << std::endl;
  return failed == expected_run ? 0 : 1;
}
