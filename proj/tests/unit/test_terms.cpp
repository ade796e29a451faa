#include "doctest.h"
#include "helpers.hpp"
#include "laws.hpp"
#include "relalg/term.hpp"

using namespace relalg;
using testing::make;
using testing::named;
using testing::NamedPairs;

TEST_SUITE("terms") {

TEST_CASE("operation semantics") {
  const Structure a = make({"1", "2"}, {{"R", {{"1", "2"}}}});
  CHECK(named(a, eval(parse_term("~R"), a)) == NamedPairs{{"2", "2"}});

  const Structure b = make({"1", "2", "3"}, {{"R", {{"1", "2"}}}, {"S", {{"1", "3"}, {"2", "3"}}}});
  CHECK(named(b, eval(parse_term("R <+ S"), b)) == NamedPairs{{"1", "2"}, {"2", "3"}});

  const Structure c = make({"1", "2", "3", "4"}, {{"f", {{"1", "1"}}}, {"g", {{"2", "1"}, {"3", "4"}}}});
  CHECK(named(c, eval(parse_term("f <# g"), c)) == NamedPairs{{"1", "1"}, {"3", "4"}});
}

TEST_CASE("parsing respects precedence") {
  const Term t = parse_term("f ; g & id");
  CHECK(t.op() == Op::Intersection);
  CHECK(t.left().op() == Op::Composition);
  CHECK(t.right().op() == Op::Id);
  const Term u = parse_term("(f^ ; g)");
  CHECK(u.op() == Op::Composition);
  CHECK(u.left().op() == Op::Converse);
  CHECK(parse_term("f <+ g | h").right().op() == Op::Union);
  CHECK(parse_term("f \\ g ; h").right().op() == Op::Composition);
}

TEST_CASE("parse errors carry a position") {
  try {
    parse_term("f ; ");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() >= 4);
  }
  CHECK_THROWS_AS(parse_term("f g"), ParseError);
}

TEST_CASE("print and parse round-trip on random terms") {
  Rng rng(11);
  Basis all;
  for (std::size_t i = 1; i < kOpCount; ++i) all.insert(static_cast<Op>(i));
  for (int i = 0; i < 1000; ++i) {
    const Term t = random_term(rng, all, {"f", "g"}, 5);
    CHECK(parse_term(print_term(t)) == t);
  }
}

TEST_CASE("term files skip comments and blank lines") {
  const auto terms = parse_term_file("# header\nf ; g\n\n  dom(f)  # trailing\n");
  REQUIRE(terms.size() == 2);
  CHECK(print_term(terms[1]) == "dom(f)");
}

TEST_CASE("normalize_fp") {
  const Structure a = make({"1", "2", "3"}, {{"f", {{"1", "2"}}}, {"g", {{"1", "3"}}}});
  CHECK(eval(normalize_fp(parse_term("f")), a) == eval(parse_term("f"), a));
  CHECK(eval(normalize_fp(parse_term("f | g")), a).empty());
  const Structure one = make({"1"}, {{"f", {}}});
  CHECK(named(one, eval(normalize_fp(top_term()), one)) == NamedPairs{{"1", "1"}});
}

TEST_CASE("normalize_fp yields partial functions") {
  Rng rng(5);
  Basis all;
  for (std::size_t i = 1; i < kOpCount; ++i) all.insert(static_cast<Op>(i));
  for (int i = 0; i < 200; ++i) {
    const Term t = random_term(rng, all, {"f", "g"}, 4);
    const Structure s = random_structure(rng.next(), 1 + rng.below(4), {"f", "g"}, StructureClass::All);
    const Relation value = eval(t, s);
    const Relation normal = eval(normalize_fp(t), s);
    CHECK(normal.is_partial_function());
    if (value.is_partial_function()) CHECK(normal == value);
  }
}

TEST_CASE("term enumeration") {
  std::vector<std::string> seen;
  for (const auto& t : enumerate_terms(Basis{Op::Composition}, {"f"}, 3)) seen.push_back(print_term(t));
  CHECK(seen == std::vector<std::string>{"f", "f ; f"});
  seen.clear();
  for (const auto& t : enumerate_terms(Basis::fa(), {"f", "g"}, 1)) seen.push_back(print_term(t));
  CHECK(seen == std::vector<std::string>{"f", "g", "id", "0"});
  std::size_t previous = 0;
  for (std::size_t k = 1; k <= 4; ++k) {
    const std::size_t count = enumerate_terms(Basis::fa(), {"f"}, k).size();
    CHECK(count >= previous);
    previous = count;
  }
}

TEST_CASE("semantic closure") {
  const Structure cycle = make({"1", "2", "3"}, {{"f", {{"1", "2"}, {"2", "3"}, {"3", "1"}}}});
  const ClosureResult r = semantic_closure(cycle, {"f"}, Basis{Op::Composition});
  CHECK(r.complete);
  REQUIRE(r.entries.size() == 3);
  CHECK(r.entries[0].relation == cycle.relation("f"));
  bool has_id = false;
  for (const auto& e : r.entries) has_id = has_id || e.relation == Relation::identity(3);
  CHECK(has_id);

  const Structure empty = make({"1", "2"}, {{"f", {}}, {"g", {}}});
  const ClosureResult e = semantic_closure(empty, {"f", "g"}, Basis{Op::Composition, Op::Intersection});
  REQUIRE(e.entries.size() == 1);
  CHECK(e.entries[0].relation.empty());
}

TEST_CASE("closure is closed under the basis") {
  const Structure s = make({"1", "2", "3"}, {{"f", {{"1", "2"}, {"2", "2"}}}, {"g", {{"3", "1"}}}});
  const Basis basis = Basis::fa();
  const ClosureResult r = semantic_closure(s, {"f", "g"}, basis);
  REQUIRE(r.complete);
  std::set<Relation> members;
  for (const auto& e : r.entries) members.insert(e.relation);
  for (Op op : basis.ops()) {
    if (arity(op) == 0 && op != Op::Symbol) CHECK(members.contains(constant_relation(op, s.size())));
    for (const auto& a : members) {
      if (arity(op) == 1) CHECK(members.contains(apply_op(op, a)));
      if (arity(op) == 2)
        for (const auto& b : members) CHECK(members.contains(apply_op(op, a, b)));
    }
  }
}

TEST_CASE("closure budget flags incomplete results") {
  const Structure s = make({"1", "2", "3"}, {{"f", {{"1", "2"}, {"2", "3"}}}});
  const ClosureResult r = semantic_closure(s, {"f"}, Basis::tra(), ClosureOptions{.max_relations = 3});
  CHECK_FALSE(r.complete);
  CHECK(r.entries.size() <= 3);
}

TEST_CASE("simplifier keeps denotations") {
  Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    const Term t = random_term(rng, Basis::fa().with(Op::Union), {"f", "g"}, 4);
    const Structure s = random_structure(rng.next(), 1 + rng.below(4), {"f", "g"}, StructureClass::All);
    CHECK(eval(simplify(t), s) == eval(t, s));
  }
  CHECK(print_term(simplify(parse_term("f ; id & f ; id"))) == "f");
  CHECK(print_term(simplify(parse_term("0 ; g"))) == "0");
}

TEST_CASE("compiled evaluation agrees with the interpreter") {
  Rng rng(9);
  Basis all;
  for (std::size_t i = 1; i < kOpCount; ++i) all.insert(static_cast<Op>(i));
  for (int i = 0; i < 300; ++i) {
    const Term t = random_term(rng, all, {"f", "g"}, 5);
    CompiledTerm c(t);
    const Structure s = random_structure(rng.next(), 1 + rng.below(70), {"f", "g"}, StructureClass::All);
    CHECK(c.eval(s) == eval(t, s));
  }
}

TEST_CASE("basis parsing") {
  CHECK(parse_basis("fa") == Basis::fa());
  CHECK(parse_basis("fa+converse") == Basis::fa().with(Op::Converse));
  CHECK(uses_only(parse_term("f ; ~g & f <+ g"), Basis::fwd()));
  CHECK_FALSE(uses_only(parse_term("f^"), Basis::fwd()));
  CHECK_THROWS_AS(parse_basis("nonsense"), Error);
}

}  // TEST_SUITE

TEST_SUITE("terms") {

TEST_CASE("definitional identities up to size 2") {
  for (const auto& law : testing::definitional_laws()) {
    INFO(law.left << " = " << law.right);
    CHECK_FALSE(testing::law_counterexample(law, 2));
  }
}

}  // TEST_SUITE
