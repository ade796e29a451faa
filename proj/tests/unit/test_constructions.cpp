#include "doctest.h"
#include "helpers.hpp"
#include "relalg/constructions.hpp"

using namespace relalg;
using testing::named;

TEST_SUITE("constructions") {

TEST_CASE("C_m") {
  const Structure c2 = build_cm(2);
  CHECK(c2.size() == 6);
  CHECK(c2.relation("E").count() == 18);
  for (std::size_t i = 0; i < c2.size(); ++i) {
    CHECK(c2.relation("E").out_degree(i) == 3);
    CHECK(c2.relation("E").in_degree(i) == 3);
  }
  const Structure c3 = build_cm(3);
  CHECK(c3.size() == 9);
  CHECK(c3.relation("E").count() == 27);
  CHECK_THROWS_AS(build_cm(1), Error);
}

TEST_CASE("C_m vee") {
  const Structure v = build_cm_vee(2);
  CHECK(v.size() == 24);
  CHECK(in_class(v, StructureClass::PartialFunctions));
  CHECK(eval(parse_term("f ; g"), v).empty());
  const Relation aux = eval(parse_term("dom(f)"), v);
  CHECK(aux == eval(parse_term("dom(g)"), v));
  CHECK(aux.count() == 18);
  const Relation normal = eval(parse_term("ran(f)"), v);
  CHECK(normal.count() == 6);
  CHECK(normal.unite(aux) == Relation::identity(v.size()));
  CHECK(normal.intersect(aux).empty());
}

TEST_CASE("pointed copies inside C are isomorphic") {
  const Structure v = build_cm_vee(2);
  const std::size_t a11 = v.index_of("a1_1");
  CHECK(isomorphism(v, {a11, v.index_of("a1_2")}, v, {a11, v.index_of("a1_3")}));
  const Structure c = build_cm(2);
  bool together = false;
  const std::pair<std::size_t, std::size_t> p{c.index_of("a1_1"), c.index_of("a1_2")};
  const std::pair<std::size_t, std::size_t> q{c.index_of("a1_1"), c.index_of("a1_3")};
  for (const auto& orbit : automorphism_orbits(c)) {
    const bool has_p = std::find(orbit.begin(), orbit.end(), p) != orbit.end();
    const bool has_q = std::find(orbit.begin(), orbit.end(), q) != orbit.end();
    together = together || (has_p && has_q);
  }
  CHECK(together);
}

TEST_CASE("counterexample bundle") {
  const CounterexampleBundle b = build_counterexample(2, 3);
  CHECK(b.c.size() == 60);
  CHECK(b.x.size() == 8);
  for (const auto& m : b.x) CHECK(m.relation.is_partial_function());
  const Relation sep = eval(b.separating, b.c);
  CHECK(sep.count() == 6);
  for (const auto& [u, v] : named(b.c, sep)) {
    CHECK(u == v);
    CHECK(u.rfind("L:a", 0) == 0);
  }
  CHECK(b.find(sep) == nullptr);
  CHECK_THROWS_AS(build_counterexample(3, 3), Error);
  CHECK_THROWS_AS(build_counterexample(3, 2), Error);
}

TEST_CASE("separating term stays inside id") {
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    const Structure s = random_structure(rng.next(), 1 + rng.below(6), {"f", "g"}, StructureClass::All);
    CHECK(eval(separating_term(2), s).subset_of(Relation::identity(s.size())));
  }
}

TEST_CASE("X is closed under FA operations") {
  const CounterexampleBundle b = build_counterexample(2, 3);
  const std::size_t n = b.c.size();
  for (Op op : Basis::fa().ops()) {
    if (op == Op::Symbol) continue;
    if (arity(op) == 0) CHECK(b.find(constant_relation(op, n)) != nullptr);
    for (const auto& l : b.x) {
      if (arity(op) == 1) CHECK(b.find(apply_op(op, l.relation)) != nullptr);
      if (arity(op) == 2)
        for (const auto& r : b.x) CHECK(b.find(apply_op(op, l.relation, r.relation)) != nullptr);
    }
  }
}

TEST_CASE("claim 2 desk runs") {
  const CounterexampleBundle b = build_counterexample(2, 3);
  const Claim2Report fa = verify_claim2_desk(b, Basis::fa());
  CHECK(fa.pass);
  CHECK(fa.complete);
  CHECK(fa.closure_size == 8);
  CHECK(fa.basis_function_preserving);

  const Claim2Report conv = verify_claim2_desk(b, Basis::fa().with(Op::Converse));
  CHECK_FALSE(conv.pass);
  CHECK_FALSE(conv.basis_function_preserving);
  REQUIRE(conv.escapee);
  CHECK(conv.separating_witness);

  const Claim2Report comp = verify_claim2_desk(b, Basis{Op::Composition});
  CHECK(comp.pass);
  for (const auto& name : comp.members) CHECK((name == "f" || name == "g" || name == "0"));
}

TEST_CASE("sink extension") {
  const CounterexampleBundle b = build_counterexample(2, 3);
  const SinkExtension ext = sink_extension(b);
  const Structure& s = ext.structure;
  CHECK(s.size() == b.c.size() + 1);
  CHECK(in_class(s, StructureClass::TotalFunctions));
  const std::size_t sink = s.index_of("s");
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(s.relation("ehat").successors(i) == std::vector{sink});
  for (const char* name : {"f", "g"})
    CHECK(named(s, eval(ext.recovery.at(name), s)) == named(b.c, b.c.relation(name)));
  const Relation sep = eval(b.separating, b.c);
  const Relation total = eval(ext.total_separating, s);
  CHECK(total.is_total_function());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const bool kept = i < b.c.size() && sep.contains(i, i);
    CHECK(total.successors(i) == std::vector{kept ? i : sink});
  }
}

TEST_CASE("figure 2") {
  for (std::size_t m = 1; m <= 3; ++m) {
    const Fig2 f = build_fig2(m + 1, 2);
    const Structure b = remove_b0(f.structure);
    CHECK(b.size() + 1 == f.structure.size());
    const Assignment aa{{"x", f.a}, {"y", f.a}};
    CHECK(eval_formula(psi_xy(), f.structure, aa));
    CHECK_FALSE(eval_formula(psi_xy(), b, aa));
    const Structure ba = ball(f.structure, f.a, m, Reach::Forward);
    const Structure bb = ball(b, f.a, m, Reach::Forward);
    CHECK(isomorphism(ba, {ba.index_of(f.a)}, bb, {bb.index_of(f.a)}));
  }
}

}  // TEST_SUITE
