#include "doctest.h"
#include "helpers.hpp"
#include "relalg/checkers.hpp"

using namespace relalg;

namespace {

Verdict run(const char* term, Property p, std::size_t samples = 200) {
  CheckBounds b;
  b.samples = samples;
  const Verdict v = check(OperationSpec::of(parse_term(term)), p, b, 0);
  if (v.counterexample) CHECK(reverify(OperationSpec::of(parse_term(term)), p, *v.counterexample));
  return v;
}

}  // namespace

TEST_SUITE("checkers") {

TEST_CASE("function preservation") {
  CHECK(run("f & g", Property::FunctionPreserving).pass);
  const Verdict v = run("f | g", Property::FunctionPreserving);
  CHECK_FALSE(v.pass);
  REQUIRE(v.counterexample);
  CHECK(v.counterexample->structures.front().size() <= 3);
  const Structure three = testing::make({"1", "2", "3"}, {{"f", {{"1", "2"}}}, {"g", {{"1", "3"}}}});
  CHECK_FALSE(eval(parse_term("f | g"), three).is_partial_function());
  CHECK_FALSE(run("f^", Property::TotalPreserving).pass);
  CHECK(run("f^", Property::InjectivePreserving).pass);
}

TEST_CASE("homomorphism safety") {
  const Verdict v = run("-f", Property::HomSafe);
  CHECK_FALSE(v.pass);
  REQUIRE(v.counterexample);
  CHECK(v.counterexample->structures.size() == 2);
  CHECK(v.counterexample->structures[0].size() <= 2);
  CHECK(run("f ; g", Property::HomSafe).pass);
  CHECK_FALSE(run("~f", Property::HomSafe).pass);
}

TEST_CASE("subset safety") {
  CHECK(run("f \\ g", Property::SubsetSafe).pass);
  CHECK_FALSE(run("f <+ g", Property::SubsetSafe).pass);
  CHECK_FALSE(run("~f", Property::SubsetSafe).pass);
}

TEST_CASE("forward") {
  const Verdict v = run("ran(f)", Property::Forward);
  CHECK_FALSE(v.pass);
  REQUIRE(v.counterexample);
  CHECK(v.counterexample->structures.front().size() <= 2);
  CHECK(run("dom(f)", Property::Forward).pass);
  CHECK_FALSE(run("T", Property::Forward).pass);
  CHECK(run("ran(f)", Property::Local).pass);
}

TEST_CASE("verdicts record bounds and seed") {
  CheckBounds b;
  b.max_size = 2;
  b.samples = 25;
  b.sample_max_size = 6;
  const Verdict v = check(OperationSpec::of(parse_term("f ; f")), Property::FunctionPreserving, b, 9);
  CHECK(v.pass);
  CHECK(v.seed == 9);
  CHECK(v.bounds.max_size == 2);
  CHECK(v.bounds.samples == 25);
  CHECK(v.bounds.sample_max_size == 6);
  CHECK(v.bounds.structure_class == "partial-functions");
}

TEST_CASE("verdicts do not depend on the worker count") {
  CheckBounds one;
  one.samples = 300;
  CheckBounds many = one;
  many.jobs = 4;
  const OperationSpec op = OperationSpec::of(parse_term("f <+ g"));
  for (Property p : {Property::HomSafe, Property::SubsetSafe, Property::FunctionPreserving}) {
    const Verdict a = check(op, p, one, 3);
    const Verdict b = check(op, p, many, 3);
    CHECK(a.pass == b.pass);
    CHECK(a.counterexample.has_value() == b.counterexample.has_value());
    if (a.counterexample && b.counterexample) {
      CHECK(a.counterexample->structures == b.counterexample->structures);
      CHECK(a.counterexample->pair == b.counterexample->pair);
    }
  }
}

TEST_CASE("formula operations") {
  const OperationSpec op = OperationSpec::of(parse_formula("exists z. (f(x,z) & g(z,y))"));
  CHECK(op.signature == std::vector<std::string>{"f", "g"});
  CheckBounds b;
  b.samples = 50;
  CHECK(check(op, Property::HomSafe, b, 0).pass);
}

TEST_CASE("property names") {
  CHECK(parse_property("homsafe") == Property::HomSafe);
  CHECK(parse_property("ifp") == Property::InjectivePreserving);
  CHECK_THROWS_AS(parse_property("nope"), Error);
}

}  // TEST_SUITE
