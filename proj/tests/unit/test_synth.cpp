#include "doctest.h"
#include "helpers.hpp"
#include "relalg/synth.hpp"

using namespace relalg;
using testing::make;

TEST_SUITE("synth") {

TEST_CASE("neighborhood types") {
  const Structure a = make({"1", "2"}, {{"f", {{"1", "2"}}}, {"g", {}}});
  const NeighborhoodType t1 = neighborhood_type(a, "1", 1, false);
  CHECK(t1.size() == 2);
  CHECK(t1.succ[0][0] == 1);
  CHECK(t1.succ[0][1] == NeighborhoodType::kNone);
  CHECK(neighborhood_type(a, "2", 1, false).size() == 1);
  CHECK(neighborhood_type(a, "2", 1, true).size() == 2);
  CHECK_THROWS_AS(neighborhood_type(make({"1", "2"}, {{"f", {{"1", "1"}, {"1", "2"}}}}), "1", 1, false),
                  Error);
}

TEST_CASE("type enumeration counts") {
  CHECK(enumerate_types({"f"}, 0, false).size() == 1);
  CHECK(enumerate_types({"f"}, 1, false).size() == 3);
  CHECK(enumerate_types({"f"}, 2, false).size() == 6);
  CHECK(enumerate_types({"f", "g"}, 1, false).size() == 10);
  CHECK(enumerate_types({"f"}, 1, true).size() == 6);
}

TEST_CASE("realizations round-trip") {
  for (bool oriented : {false, true})
    for (std::size_t m = 0; m <= 2; ++m)
      for (const auto& t : enumerate_types({"f"}, m, oriented)) {
        const Structure r = realization(t);
        CHECK(neighborhood_type(r, r.element(0), m, oriented) == t);
        const Structure p = realization(t, true);
        CHECK(neighborhood_type(p, p.element(0), m, oriented) == t);
      }
}

TEST_CASE("type completeness on small structures") {
  const auto types = enumerate_types({"f"}, 2, false);
  StructureStream stream({"f"}, 4, StructureClass::PartialFunctions);
  Structure s;
  while (stream.next(s))
    for (const auto& e : s.domain())
      CHECK(std::find(types.begin(), types.end(), neighborhood_type(s, e, 2, false)) != types.end());
}

TEST_CASE("chi terms") {
  const auto types = enumerate_types({"f"}, 1, false);
  for (const auto& t : types) CHECK(uses_only(chi_term(t), Basis::fwd()));
  Rng rng(1);
  for (int i = 0; i < 40; ++i) {
    const Structure s = random_structure(rng.next(), 1 + rng.below(6), {"f"}, StructureClass::PartialFunctions);
    for (const auto& t : types) {
      const Relation chi = eval(chi_term(t), s);
      CHECK(chi.subset_of(Relation::identity(s.size())));
      for (std::size_t a = 0; a < s.size(); ++a)
        CHECK(chi.contains(a, a) == (neighborhood_type(s, s.element(a), 1, false) == t));
    }
  }
}

TEST_CASE("forward synthesis") {
  const OperationSpec dom = OperationSpec::of(parse_term("dom(f)"));
  const SynthesisResult r = synthesize_forward(dom, 1);
  CHECK(uses_only(r.term, Basis::fwd()));
  SynthesisBounds bounds;
  bounds.samples = 200;
  CHECK(validate_synthesis(dom, r.term, false, bounds, 0).pass);

  const OperationSpec gf = OperationSpec::of(parse_term("~g ; f"));
  const SynthesisResult r2 = synthesize_forward(gf, 1);
  CHECK(uses_only(r2.term, Basis::fwd()));
  CHECK(validate_synthesis(gf, r2.term, false, bounds, 0).pass);

  CHECK(print_term(synthesize_forward(OperationSpec::of(parse_term("0"), {"f"}), 1).term) == "~f ; f");
}

TEST_CASE("synthesis errors") {
  CHECK_THROWS_WITH_AS(synthesize_forward(OperationSpec::of(parse_term("ran(f)")), 1),
                       doctest::Contains("not m-bounded"), SynthesisError);
  CHECK_THROWS_WITH_AS(synthesize_forward(OperationSpec::of(parse_term("f | id")), 1),
                       doctest::Contains("not function-preserving"), SynthesisError);
}

TEST_CASE("local injective synthesis") {
  SynthesisBounds bounds;
  bounds.samples = 200;
  for (const char* text : {"f^", "dom(f)", "ran(f)"}) {
    const OperationSpec op = OperationSpec::of(parse_term(text));
    const SynthesisResult r = synthesize_local_injective(op, 1);
    CHECK(uses_only(r.term, Basis::inj()));
    CHECK(validate_synthesis(op, r.term, true, bounds, 0).pass);
  }
}

TEST_CASE("validation finds wrong terms") {
  SynthesisBounds bounds;
  bounds.samples = 10;
  const ValidationReport r =
      validate_synthesis(OperationSpec::of(parse_term("g"), {"f", "g"}), parse_term("f"), false, bounds, 0);
  CHECK_FALSE(r.pass);
  REQUIRE(r.counterexample);
  CHECK(r.counterexample->structure.size() <= 2);
  CHECK(r.max_size == 4);
}

TEST_CASE("radius estimates") {
  SynthesisBounds bounds;
  bounds.samples = 100;
  CHECK(estimate_radius(OperationSpec::of(parse_term("dom(f)")), 2, false, bounds, 0).radius == 1u);
  CHECK_FALSE(estimate_radius(OperationSpec::of(parse_term("ran(f)")), 2, false, bounds, 0).radius);
}

}  // TEST_SUITE
