#include "doctest.h"
#include "helpers.hpp"
#include "relalg/constructions.hpp"
#include "relalg/formula.hpp"
#include "relalg/games.hpp"

using namespace relalg;
using testing::make;

TEST_SUITE("games") {

TEST_CASE("loop versus no loop") {
  const Structure loop = make({"1"}, {{"E", {{"1", "1"}}}});
  const Structure plain = make({"1"}, {{"E", {}}});
  CHECK(ef_equiv(loop, {}, plain, {}, 0));
  CHECK_FALSE(ef_equiv(loop, {}, plain, {}, 1));
  CHECK_FALSE(ef_equiv(loop, {"1"}, plain, {"1"}, 0));
  CHECK(min_distinguishing_rank(loop, plain, 3) == 1u);
  CHECK_FALSE(min_distinguishing_rank(loop, loop, 3));
}

TEST_CASE("isomorphic copies are equivalent") {
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    const Structure s = random_structure(rng.next(), 1 + rng.below(5), {"E"}, StructureClass::All);
    const Structure t = shuffled_copy(s, rng.next());
    for (std::size_t r = 0; r <= 3; ++r) CHECK(ef_equiv(s, {}, t, {}, r));
  }
}

TEST_CASE("reflexivity and antitonicity") {
  Rng rng(8);
  for (int i = 0; i < 40; ++i) {
    const Structure a = random_structure(rng.next(), 1 + rng.below(4), {"E"}, StructureClass::All);
    const Structure b = random_structure(rng.next(), 1 + rng.below(4), {"E"}, StructureClass::All);
    CHECK(ef_equiv(a, {a.element(0)}, a, {a.element(0)}, 2));
    for (std::size_t r = 0; r < 3; ++r)
      if (ef_equiv(a, {}, b, {}, r + 1)) CHECK(ef_equiv(a, {}, b, {}, r));
  }
}

TEST_CASE("rank-2 equivalence agrees with sentences") {
  const std::vector<Formula> sentences{
      parse_formula("exists x. E(x,x)"),
      parse_formula("forall x. exists y. E(x,y)"),
      parse_formula("exists x. exists y. (E(x,y) & !(x=y))"),
      parse_formula("exists x. forall y. E(y,x)"),
      parse_formula("forall x. forall y. (E(x,y) -> E(y,x))"),
  };
  const auto structures = enumerate_structures({"E"}, 2, StructureClass::All);
  for (const auto& a : structures)
    for (const auto& b : structures)
      if (ef_equiv(a, {}, b, {}, 2))
        for (const auto& s : sentences) CHECK(eval_formula(s, a, {}) == eval_formula(s, b, {}));
}

TEST_CASE("C_2 vee against C_3 vee") {
  CHECK(min_distinguishing_rank(build_cm_vee(2), build_cm_vee(3), 3) == 3u);
}

TEST_CASE("disjoint-union composition") {
  const FvReport r = check_fv_disjoint_union(2, 30, 3, 0);
  CHECK(r.violations.empty());
  CHECK(r.premises_held + r.skipped == 30);
  const Structure a = make({"1", "2"}, {{"E", {{"1", "2"}}}});
  const Structure b = make({"1"}, {{"E", {{"1", "1"}}}});
  CHECK(ef_equiv(disjoint_union(a, b), {}, disjoint_union(shuffled_copy(a, 1), shuffled_copy(b, 2)), {}, 3));
}

TEST_CASE("bounds are enforced") {
  const Structure a = make({"1"}, {{"E", {}}});
  CHECK_THROWS_AS(ef_equiv(a, {}, a, {}, 9), Error);
  CHECK_THROWS_AS(ef_equiv(a, {"1"}, a, {}, 1), Error);
}

}  // TEST_SUITE
