#include "doctest.h"
#include "helpers.hpp"
#include "relalg/constructions.hpp"
#include "relalg/formula.hpp"
#include "relalg/term.hpp"

using namespace relalg;
using testing::make;
using testing::named;
using testing::NamedPairs;

TEST_SUITE("logic") {

TEST_CASE("formula evaluation") {
  const Structure path = make({"1", "2", "3"}, {{"R", {{"1", "2"}, {"2", "3"}}}});
  const Formula two = parse_formula("exists z. (R(x,z) & R(z,y))");
  CHECK(eval_formula(two, path, {{"x", "1"}, {"y", "3"}}));
  CHECK_FALSE(eval_formula(two, path, {{"x", "1"}, {"y", "2"}}));
  const Formula eq = parse_formula("x=y");
  CHECK(eval_formula(eq, path, {{"x", "2"}, {"y", "2"}}));
  CHECK_FALSE(eval_formula(eq, path, {{"x", "1"}, {"y", "2"}}));
}

TEST_CASE("define_relation") {
  const Structure s = make({"1", "2", "3"}, {{"R", {{"1", "2"}, {"3", "3"}}}});
  CHECK(define_relation(parse_formula("R(x,y)"), "x", "y", s) == s.relation("R"));
  CHECK(define_relation(parse_formula("R(y,x)"), "x", "y", s) == s.relation("R").converse());
}

TEST_CASE("figure-2 formulas") {
  const Fig2 f = build_fig2(3, 2);
  const Relation phi = define_relation(
      Formula::conj(phi_u(), Formula::eq("u", "v")), "u", "v", f.structure);
  CHECK(phi.contains(f.structure.index_of("b0"), f.structure.index_of("b0")));
  CHECK(named(f.structure, define_relation(psi_xy(), "x", "y", f.structure)) == NamedPairs{{"a", "a"}});
}

TEST_CASE("term_to_fo3 base cases") {
  CHECK(print_formula(term_to_fo3(parse_term("f"))) == "f(x,y)");
  CHECK(print_formula(term_to_fo3(parse_term("f ; g"))) == "exists z. (f(x,z) & g(z,y))");
  CHECK(print_formula(term_to_fo3(parse_term("~f"))) == "x=y & !(exists z. f(x,z))");
}

TEST_CASE("term_to_fo3 agrees with eval") {
  Rng rng(21);
  Basis all;
  for (std::size_t i = 1; i < kOpCount; ++i) all.insert(static_cast<Op>(i));
  const auto structures = enumerate_structures({"f", "g"}, 2, StructureClass::All);
  for (int i = 0; i < 150; ++i) {
    const Term t = random_term(rng, all, {"f", "g"}, 4);
    const Formula f = term_to_fo3(t);
    const Classification c = classify(f);
    CHECK(c.variable_count <= 3);
    CHECK(c.free_vars == std::set<std::string>{"x", "y"});
    for (std::size_t k = 0; k < structures.size(); k += 7)
      CHECK(define_relation(f, "x", "y", structures[k], true) == eval(t, structures[k]));
  }
}

TEST_CASE("classification") {
  const Classification c = classify(parse_formula("exists z.(R(x,z) & R(z,y))"));
  CHECK(c.variable_count == 3);
  CHECK(c.is_posex);
  CHECK_FALSE(classify(parse_formula("!R(x,y)")).is_posex);
  CHECK_FALSE(classify(parse_formula("forall z. R(x,z)")).is_posex);
}

TEST_CASE("alpha-renaming does not change truth") {
  const Formula a = parse_formula("exists z. (R(x,z) & exists x. R(z,x))");
  const Formula b = parse_formula("exists w. (R(x,w) & exists v. R(w,v))");
  for (const auto& s : enumerate_structures({"R"}, 3, StructureClass::All))
    CHECK(define_relation(a, "x", "y", s, true) == define_relation(b, "x", "y", s, true));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_formula("exists z R(x,z)"), ParseError);
  CHECK_THROWS_AS(parse_formula("R(x,y) &"), ParseError);
}

}  // TEST_SUITE
