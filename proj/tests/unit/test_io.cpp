#include "doctest.h"
#include "helpers.hpp"
#include "relalg/io.hpp"

using namespace relalg;
using testing::make;

TEST_SUITE("io") {

TEST_CASE("structure JSON round-trip") {
  const Structure s = make({"b", "a"}, {{"f", {{"a", "b"}}}, {"g", {}}});
  const Structure back = parse_structure(structure_to_json(s));
  CHECK(back.signature() == s.signature());
  CHECK(back.named_pairs(back.relation("f")) == s.named_pairs(s.relation("f")));
  CHECK(structure_to_json(back) == structure_to_json(s));
}

TEST_CASE("relations are optional") {
  const Structure s = parse_structure(R"({"domain": ["1", "2"]})");
  CHECK(s.size() == 2);
  CHECK(s.signature().empty());
}

TEST_CASE("malformed structures are rejected") {
  CHECK_THROWS_AS(parse_structure("{"), Error);
  CHECK_THROWS_AS(parse_structure(R"({"relations": {}})"), Error);
  CHECK_THROWS_AS(parse_structure(R"({"domain": ["1"], "extra": 1})"), Error);
  CHECK_THROWS_AS(parse_structure(R"({"domain": ["1"], "relations": {"f": [["1"]]}})"), Error);
  CHECK_THROWS_WITH_AS(parse_structure(R"({"domain": ["1"], "relations": {"f": [["1", "7"]]}})"),
                       doctest::Contains("(1, 7)"), Error);
  CHECK_THROWS_AS(parse_structure(R"({"domain": ["1", "1"]})"), Error);
}

TEST_CASE("missing files raise I/O errors") {
  CHECK_THROWS_AS(read_file("/nonexistent/relalg/input.json"), IoError);
}

}  // TEST_SUITE
