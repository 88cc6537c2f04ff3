#include "hqds/io.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace hqds;

TEST_CASE("parse a document") {
  const auto doc = parse_input(R"({"label": "A3",
    "structure_constants": [[[0,0,0],[0,0,1],[0,0,0]],
                            [[0,0,1],[0,0,0],[0,0,0]],
                            [[0,0,0],[0,0,0],[0,0,0]]]})");
  CHECK(doc.label == "A3");
  CHECK(doc.constants(0, 1, 2) == 1.0);
  CHECK(doc.constants(1, 0, 2) == 1.0);
  CHECK(doc.constants.max_abs() == 1.0);
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS_AS(parse_input("not json"), ParseError);
  CHECK_THROWS_AS(parse_input("[]"), ParseError);
  CHECK_THROWS_AS(parse_input(R"({"label": "x"})"), ParseError);
  CHECK_THROWS_AS(parse_input(R"({"structure_constants": [[[0,0,0]]]})"), ParseError);
  CHECK_THROWS_AS(parse_input(R"({"structure_constants":
    [[[0,0,"a"],[0,0,0],[0,0,0]],[[0,0,0],[0,0,0],[0,0,0]],[[0,0,0],[0,0,0],[0,0,0]]]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_input(R"({"label": 3, "structure_constants":
    [[[0,0,0],[0,0,0],[0,0,0]],[[0,0,0],[0,0,0],[0,0,0]],[[0,0,0],[0,0,0],[0,0,0]]]})"),
                  ParseError);
}

TEST_CASE("asymmetric constants are rejected, not symmetrized") {
  CHECK_THROWS_AS(parse_input(R"({"structure_constants":
    [[[0,0,0],[0,0,1],[0,0,0]],[[0,0,0],[0,0,0],[0,0,0]],[[0,0,0],[0,0,0],[0,0,0]]]})"),
                  ParseError);
}

TEST_CASE("serialize and parse round trip") {
  std::mt19937_64 rng(71);
  for (int n = 0; n < 20; ++n) {
    InputDocument doc;
    if (n % 2) doc.label = "random " + std::to_string(n);
    doc.constants = testing::random_table(rng);
    CHECK(parse_input(serialize_input(doc)) == doc);
  }
}
