#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "../golden_cases.hpp"
#include "latticelab/cli.hpp"
#include "latticelab/constructions.hpp"
#include "latticelab/io.hpp"

using namespace latticelab;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto d = std::filesystem::temp_directory_path() / "latticelab-cli-test";
  std::filesystem::create_directories(d);
  return d / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("goldens reproduce byte for byte") {
  for (const auto& c : golden::cases()) {
    CAPTURE(c.name);
    const golden::Outcome o = golden::run(c);
    CHECK(o.exit_code == c.exit_code);
    CHECK(o.text == golden::read(c.name));
  }
}

TEST_CASE("goldens do not depend on the thread count") {
  for (const auto& c : golden::cases()) {
    CAPTURE(c.name);
    CHECK(golden::run(c, {"--threads", "4"}).text == golden::run(c, {"--threads", "1"}).text);
  }
}

TEST_CASE("generated posets parse back unchanged") {
  for (std::vector<std::string> args :
       {std::vector<std::string>{"gen", "omega-star-fig", "--n", "4"}, {"gen", "powerset", "--k", "3"},
        {"gen", "sierp", "--alpha", "w.(2)", "--stage", "6", "--phi", "reverse"}, {"gen", "Q-alpha", "--stage", "3"}}) {
    const Run r = cli(args);
    REQUIRE(r.code == 0);
    const Poset p = parse_poset(r.out);
    CHECK(dump(poset_to_json(p)) == r.out);
  }
  CHECK(parse_poset(cli({"gen", "omega-star-fig", "--n", "4"}).out).size() == 7);
  CHECK(parse_poset(cli({"gen", "sierp", "--alpha", "eta", "--stage", "3"}).out).size() == 3);
  CHECK(parse_poset(cli({"gen", "powerset", "--k", "3"}).out) == powerset_semilattice(3, 64));
}

TEST_CASE("output files and DOT side files") {
  const auto out = scratch("p3.json");
  std::filesystem::remove(out);
  std::filesystem::remove(scratch("p3.dot"));
  const Run r = cli({"gen", "powerset", "--k", "3", "--dot", "-o", out.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(parse_poset(slurp(out)) == powerset_semilattice(3, 64));
  CHECK(slurp(scratch("p3.dot")) == to_dot(powerset_semilattice(3, 64)));
}

TEST_CASE("exit codes") {
  const std::string in = golden::dir() + "/inputs/";
  CHECK(cli({"embed", in + "diamond.json", in + "p2.json", "--mode", "join-bottom"}).code == 0);
  CHECK(cli({"embed", in + "p3.json", in + "chain4.json"}).code == 1);
  CHECK(cli({"dim", in + "p3.json", "--k", "2"}).code == 1);
  CHECK(cli({"dim", in + "p3.json", "--k", "3"}).code == 0);
  CHECK(cli({"gen", "no-such-thing"}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"probe", "powerset", "sideways"}).code == 2);
  CHECK(cli({"gen", "sierp", "--phi", "sideways"}).code == 2);
  const Run bad = cli({"analyze", in + "malformed.json"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("line 3") != std::string::npos);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("size bounds from the config and the environment") {
  CHECK(cli({"gen", "powerset", "--k", "7"}).code == 2);
  const auto cfg = scratch("big.json");
  std::ofstream(cfg) << "{\"max_elements\": 128}";
  CHECK(cli({"--config", cfg.string(), "gen", "powerset", "--k", "7"}).code == 0);
  setenv("LATTICELAB_MAX_ELEMENTS", "200", 1);
  const Run r = cli({"gen", "powerset", "--k", "7"});
  unsetenv("LATTICELAB_MAX_ELEMENTS");
  CHECK(r.code == 0);
  CHECK(parse_poset(r.out).size() == 128);
  const auto small = scratch("small.json");
  std::ofstream(small) << "{\"max_elements\": 3}";
  const Run s = cli({"--config", small.string(), "analyze", golden::dir() + "/inputs/chain4.json"});
  CHECK(s.code == 2);
  CHECK(s.err.find("bound 3") != std::string::npos);
}

TEST_CASE("reports carry the seed") {
  const Run a = cli({"--seed", "9", "probe", "sierp", "width", "--alpha", "w.(2)", "--phi", "seeded-random", "--budget", "4"});
  REQUIRE(a.code == 0);
  CHECK(Json::parse(a.out)["seed"] == 9);
  CHECK(a.out == cli({"--seed", "9", "probe", "sierp", "width", "--alpha", "w.(2)", "--phi", "seeded-random",
                      "--budget", "4"}).out);
}
