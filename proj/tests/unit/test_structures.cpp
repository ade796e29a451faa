#include "doctest.h"
#include "helpers.hpp"

using namespace relalg;
using testing::make;
using testing::named;
using testing::NamedPairs;

TEST_SUITE("structures") {

TEST_CASE("generated substructure follows the reach mode") {
  const Structure a = make({"1", "2"}, {{"R", {{"1", "2"}}}});
  const Structure from1 = generated_substructure(a, "1", Reach::Forward);
  CHECK(from1.domain() == std::vector<std::string>{"1", "2"});
  CHECK(named(from1, from1.relation("R")) == NamedPairs{{"1", "2"}});
  const Structure from2 = generated_substructure(a, "2", Reach::Forward);
  CHECK(from2.domain() == std::vector<std::string>{"2"});
  CHECK(from2.relation("R").empty());
  const Structure undirected = generated_substructure(a, "2", Reach::Undirected);
  CHECK(undirected.size() == 2);
  CHECK(named(undirected, undirected.relation("R")) == NamedPairs{{"1", "2"}});
}

TEST_CASE("balls") {
  const Structure a = make({"1", "2", "3"}, {{"R", {{"1", "2"}, {"2", "3"}}}});
  const Structure b1 = ball(a, "1", 1, Reach::Forward);
  CHECK(b1.domain() == std::vector<std::string>{"1", "2"});
  CHECK(named(b1, b1.relation("R")) == NamedPairs{{"1", "2"}});
  const Structure b0 = ball(a, "1", 0, Reach::Forward);
  CHECK(b0.domain() == std::vector<std::string>{"1"});
  CHECK(b0.relation("R").empty());
  CHECK(ball(a, "1", 3, Reach::Forward) == generated_substructure(a, "1", Reach::Forward));
}

TEST_CASE("disjoint union") {
  const Structure a = make({"1", "2"}, {{"R", {}}});
  const Structure b = make({"1", "2", "3"}, {{"R", {}}});
  const Structure u = disjoint_union(a, b);
  CHECK(u.size() == 5);
  CHECK(u.relation("R").empty());
  CHECK_THROWS_AS(disjoint_union(a, make({"x"}, {{"S", {}}})), Error);
}

TEST_CASE("homomorphisms") {
  const Structure point = make({"p"}, {{"R", {}}});
  const Structure target = make({"1", "2", "3"}, {{"R", {{"1", "2"}}}});
  CHECK(homomorphisms(point, target).size() == 3);
  const Structure edge = make({"1", "2"}, {{"R", {{"1", "2"}}}});
  CHECK(homomorphisms(edge, make({"x"}, {{"R", {}}})).empty());
  const auto self = homomorphisms(target, target);
  CHECK(std::find(self.begin(), self.end(), ElementMap{0, 1, 2}) != self.end());
  for (const auto& h : self) CHECK(is_homomorphism(target, target, h));
}

TEST_CASE("isomorphism") {
  const Structure a = make({"1", "2", "3"}, {{"R", {{"1", "2"}, {"2", "3"}}}});
  const auto iso = isomorphism(a, {0}, a, {0});
  REQUIRE(iso);
  CHECK(*iso == ElementMap{0, 1, 2});
  CHECK_FALSE(isomorphism(a, {}, make({"1", "2"}, {{"R", {}}}), {}));
}

TEST_CASE("automorphism orbits") {
  const Structure empty = make({"1", "2", "3"}, {{"R", {}}});
  CHECK(automorphism_orbits(empty).size() == 2);
  const Structure edge = make({"1", "2"}, {{"R", {{"1", "2"}}}});
  CHECK(automorphism_orbits(edge).size() == 4);
}

TEST_CASE("structure enumeration counts") {
  // 2^(k*k) relations per size k: 2 + 16.
  CHECK(enumerate_structures({"R"}, 2, StructureClass::All).size() == 18);
  CHECK(enumerate_structures({"R"}, 2, StructureClass::All, true).size() == 19);
  StructureStream pf({"R"}, 2, StructureClass::PartialFunctions);
  CHECK(pf.count_of_size(2) == 9);
  StructureStream tf({"R"}, 2, StructureClass::TotalFunctions);
  CHECK(tf.count_of_size(2) == 4);
  std::size_t seen = 0;
  Structure s;
  while (pf.next(s)) {
    CHECK(in_class(s, StructureClass::PartialFunctions));
    ++seen;
  }
  CHECK(seen == pf.total());
}

TEST_CASE("random structures are deterministic and in class") {
  CHECK(random_structure(7, 5, {"f", "g"}, StructureClass::All) ==
        random_structure(7, 5, {"f", "g"}, StructureClass::All));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Structure p = random_structure(seed, 6, {"f"}, StructureClass::PartialFunctions);
    CHECK(p.relation("f").is_partial_function());
    const Structure i = random_structure(seed, 6, {"f"}, StructureClass::InjectivePartialFunctions);
    CHECK(i.relation("f").converse().is_partial_function());
  }
}

TEST_CASE("unknown elements are rejected") {
  Structure s({"1"}, {"R"});
  CHECK_THROWS_WITH_AS(s.add_pair("R", "1", "9"), doctest::Contains("(1, 9)"), Error);
  CHECK_THROWS_AS(s.index_of("9"), Error);
}

}  // TEST_SUITE
