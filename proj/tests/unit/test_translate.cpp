#include "doctest.h"
#include "helpers.hpp"
#include "relalg/translate.hpp"

using namespace relalg;

TEST_SUITE("translate") {

TEST_CASE("compile_posex base cases") {
  CHECK(print_term(compile_posex(parse_formula("R(x,y)"))) == "R");
  CHECK(print_term(compile_posex(parse_formula("x=y"))) == "id");
  CHECK(print_term(compile_posex(parse_formula("R(y,x)"))) == "R^");
  CHECK(print_term(compile_posex(parse_formula("exists z.(R(x,z) & S(z,y))"))) == "R ; S");
}

TEST_CASE("compile_posex hoists disjunctions") {
  const Formula f = parse_formula("exists z.((R(x,z) | S(x,z)) & Q(z,y))");
  const Term t = compile_posex(f);
  CHECK(uses_only(t, Basis::homsafe()));
  CHECK(verify_compilation(f, t, EquivalenceBounds{}, 0).pass);
}

TEST_CASE("compile_posex rejects non-posex input") {
  CHECK_THROWS_AS(compile_posex(parse_formula("!R(x,y)")), Error);
  CHECK_THROWS_AS(compile_posex(parse_formula("exists u. exists v. (R(x,u) & R(u,v) & R(v,y))")), Error);
}

TEST_CASE("verification finds wrong compilations") {
  const EquivalenceReport r = verify_compilation(parse_formula("R(x,y)"), id_term(), EquivalenceBounds{}, 0);
  CHECK_FALSE(r.pass);
  REQUIRE(r.counterexample);
  CHECK(r.counterexample->structure.size() <= 2);
}

TEST_CASE("random posex formulas compile") {
  Rng rng(17);
  EquivalenceBounds bounds;
  bounds.max_size = 2;
  bounds.samples = 50;
  for (int i = 0; i < 25; ++i) {
    const Formula f = random_posex_formula(rng, {"R", "S"}, 3);
    const Term t = compile_posex(f);
    CHECK(uses_only(t, Basis::homsafe()));
    CHECK(verify_compilation(f, t, bounds, i).pass);
  }
}

TEST_CASE("equivalence reports record bounds") {
  EquivalenceBounds bounds;
  bounds.max_size = 2;
  bounds.samples = 10;
  bounds.sample_max_size = 5;
  const EquivalenceReport r = check_equivalence(Definition::of(parse_term("f ; g")),
                                                Definition::of(parse_formula("exists z. (f(x,z) & g(z,y))")),
                                                bounds, 4);
  CHECK(r.pass);
  CHECK(r.max_size == 2);
  CHECK(r.samples == 10);
  CHECK(r.sample_max_size == 5);
  CHECK(r.seed == 4);
}

}  // TEST_SUITE
