#include <doctest.h>

#include <cstdlib>
#include <random>

#include "latticelab/catalogue.hpp"
#include "latticelab/constructions.hpp"
#include "latticelab/error.hpp"
#include "latticelab/io.hpp"

using namespace latticelab;

TEST_CASE("poset JSON round-trips") {
  std::mt19937_64 rng(61);
  for (int rep = 0; rep < 30; ++rep) {
    const Poset p = random_poset(1 + rep % 9, rng);
    CHECK(parse_poset(dump(poset_to_json(p))) == p);
  }
  const Poset f = figure1(4);
  const Poset back = parse_poset(dump(poset_to_json(f)));
  CHECK(back == f);
  CHECK(back.labels() == f.labels());
  CHECK(parse_poset(dump(poset_to_json(Poset{}))).empty());
}

TEST_CASE("poset JSON layout") {
  CHECK(dump(poset_to_json(chain(2))) == "{\n  \"size\": 2,\n  \"covers\": [\n    [\n      0,\n      1\n    ]\n  ]\n}\n");
  CHECK(poset_to_json(figure1(3))["labels"][1] == "(0,1)");
  CHECK_FALSE(poset_to_json(chain(2)).contains("labels"));
}

TEST_CASE("poset JSON errors") {
  CHECK_THROWS_AS(parse_poset("{\"size\": 2, \"covers\": [[0, 1], [1, 0]]}"), CycleError);
  CHECK_THROWS_AS(parse_poset("{\"size\": 2, \"covers\": [[0, 4]]}"), ParseError);
  CHECK_THROWS_AS(parse_poset("{\"covers\": []}"), ParseError);
  CHECK_THROWS_AS(parse_poset("[1, 2]"), ParseError);
  CHECK_THROWS_AS(parse_poset("{\"size\": 2, \"covers\": [[0, 1]], \"labels\": [\"a\"]}"), ParseError);
  try {
    parse_poset("{\n  \"size\": 2,\n  \"covers\": [[0, 1] [1, 0]]\n}");
    FAIL("expected a syntax error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() > 1);
  }
  try {
    parse_poset("{\n  \"size\": \"two\",\n  \"covers\": []\n}");
    FAIL("expected a schema error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(read_poset("/nonexistent/poset.json"), Error);
}

TEST_CASE("DOT and text renderings") {
  CHECK(to_dot(chain(2)) == "digraph poset {\n  rankdir=BT;\n  \"0\";\n  \"1\";\n  \"0\" -> \"1\";\n}\n");
  const std::string d = to_dot(powerset_semilattice(3, 64));
  std::size_t edges = 0;
  for (std::size_t at = d.find("->"); at != std::string::npos; at = d.find("->", at + 1)) ++edges;
  CHECK(edges == 12);
  CHECK(d.find("\"{0,1}\"") != std::string::npos);
  CHECK(to_text(chain(2)) == "size 2\n0 < 1\n");
  CHECK(render(chain(2), Format::Text) == to_text(chain(2)));
  CHECK(parse_format("dot") == Format::Dot);
  CHECK_THROWS_AS(parse_format("xml"), Error);
}

TEST_CASE("configuration") {
  const Config d = parse_config("{}");
  CHECK(d.max_elements == 64);
  CHECK(d.max_downsets == std::size_t{1} << 20);
  CHECK(d.tuple_bound == 3);
  CHECK(d.seed == 0);
  const Config c = parse_config("{\"max_elements\": 100, \"seed\": 7, \"format\": \"text\"}");
  CHECK(c.max_elements == 100);
  CHECK(c.seed == 7);
  CHECK(c.format == Format::Text);
  CHECK_THROWS_AS(parse_config("{\"max_elements\": 0}"), ParseError);
  CHECK_THROWS_AS(parse_config("{\"colour\": 1}"), ParseError);
  CHECK_THROWS_AS(parse_config("{\"seed\": "), ParseError);

  Config e;
  setenv("LATTICELAB_MAX_ELEMENTS", "200", 1);
  apply_environment(e);
  unsetenv("LATTICELAB_MAX_ELEMENTS");
  CHECK(e.max_elements == 200);
}

TEST_CASE("report serialisation") {
  const auto w = find_embedding(figure1(3), powerset_semilattice(2, 64), EmbedMode::JoinBottom);
  REQUIRE(w);
  const Json j = witness_to_json(*w);
  CHECK(j["mode"] == "join-bottom");
  CHECK(j["map"] == Json::array({0, 1, 3, 2}));
  CHECK(j["verified"] == true);

  const Json a = analysis_to_json(figure1(3), Config{});
  CHECK(a["size"] == 4);
  CHECK(a["height"] == 3);
  CHECK(a["width"] == 2);
  CHECK(a["lattice"] == true);
  CHECK(a["downsets"] == 6);

  const Json wp = width_to_json(width_growth(powerset_family(), 5), 5, 0);
  CHECK(wp["widths"] == Json::array({1, 1, 2, 3, 6}));
  CHECK(wp["budget"] == 5);
  CHECK(wp["evidence"].get<std::string>().rfind("EVIDENCE", 0) == 0);
  CHECK(wp.contains("seed"));

  CHECK(dimension_to_json(dimension_exact(powerset_semilattice(3, 64)), 4)["dimension"] == 3);
  CHECK(dimension_to_json(DimensionResult{}, 2)["dimension"] == "unknown");
}
