#include <doctest.h>

#include "galoisforge/error.hpp"
#include "galoisforge/serialize.hpp"

using namespace galoisforge;
using namespace galoisforge::serialize;

TEST_CASE("map schema")
{
  auto pi = parse_map(parse_text(R"({"map": [0, 1, 1]})"));
  CHECK(pi.cod().size == 2);
  CHECK(parse_map(parse_text(R"({"map": [0], "codomain": 3})")).cod().size == 3);
  CHECK_THROWS_AS(parse_map(parse_text(R"({"mapp": [0]})")), SchemaError);
  CHECK_THROWS_AS(parse_map(parse_text(R"({"map": [0, -1]})")), SchemaError);
  CHECK_THROWS_AS(parse_map(parse_text(R"({"map": "x"})")), SchemaError);
  CHECK_THROWS_AS(parse_map(parse_text(R"({"map": [2], "codomain": 1})")), SchemaError);
  CHECK_THROWS_AS(parse_text("{\"map\": [0,"), ParseError);
}

TEST_CASE("schema errors name the field")
{
  try {
    parse_cover(parse_text(R"({"base": {"vertices": 1, "edges": [[0, 0]]}, "monodromy": [[1, 1]]})"));
    FAIL("expected a schema error");
  } catch (SchemaError const &e) {
    CHECK(std::string(e.what()).find("monodromy") != std::string::npos);
  }
  try {
    parse_cover(parse_text(R"({"base": {"vertices": 1}})"));
    FAIL("expected a schema error");
  } catch (SchemaError const &e) {
    CHECK(std::string(e.what()).find("base.edges") != std::string::npos);
  }
}

TEST_CASE("explicit and monodromy cover forms agree")
{
  auto a = parse_cover(parse_text(R"({"base": {"vertices": 1, "edges": [[0, 0]]}, "monodromy": [[1, 0]]})"));
  auto b = parse_cover(parse_text(R"({"base": {"vertices": 1, "edges": [[0, 0]]},
    "total": {"vertices": 2, "edges": [[0, 1], [1, 0]]}, "proj_v": [0, 0], "proj_e": [0, 0]})"));
  CHECK(a.total.edges == b.total.edges);
  CHECK(to_json(a) == to_json(b));
}

TEST_CASE("field schema")
{
  auto ext = parse_field(parse_text(R"({"p": 2, "n": 2, "modulus": [1, 1, 1]})"));
  CHECK(ext.L.size() == 4);
  CHECK(parse_field(parse_text(R"({"p": 3, "n": 2})")).L.size() == 9);
  CHECK_THROWS_AS(parse_field(parse_text(R"({"p": 2, "n": 2, "modulus": [1, 0, 1]})")), SchemaError);
  CHECK_THROWS_AS(parse_field(parse_text(R"({"p": 2, "n": 7})")), CapExceeded);
}

TEST_CASE("json reports keep key order")
{
  auto j = to_json(kernel::FinMap(2, 1, {0, 0}));
  auto dumped = j.dump();
  CHECK(dumped.find("domain") < dumped.find("table"));
  auto v = to_json(galois::galois_verdict(kernel::FinMap(2, 1, {0, 0})));
  CHECK(v.contains("absolute"));
  CHECK(v["absolute"]["verdict"]["kind"] == "Galois");
}

TEST_CASE("text rendering flattens paths")
{
  Json j = {{"a", {{"b", 1}}}, {"c", Json::array({Json{{"d", true}}})}, {"e", {1, 2}}};
  CHECK(to_text(j) == "a.b: 1\nc[0].d: true\ne: [1,2]\n");
}

TEST_CASE("lattice dot is balanced")
{
  correspondence::Lattice l{{"x", "y"}, {{0, 0}, {1, 1}, {0, 1}}};
  auto dot = lattices_to_dot(l, "left", l, "right", {{0, 1}, {1, 0}});
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(std::count(dot.begin(), dot.end(), '{') == std::count(dot.begin(), dot.end(), '}'));
  CHECK(dot.find("l0 -> r1") != std::string::npos);
}
