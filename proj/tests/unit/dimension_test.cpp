#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "latticelab/catalogue.hpp"
#include "latticelab/constructions.hpp"
#include "latticelab/dimension.hpp"
#include "latticelab/error.hpp"

using namespace latticelab;

TEST_CASE("critical pairs") {
  CHECK(critical_pairs(chain(4)).empty());
  CHECK(critical_pairs(antichain(2)) == std::vector<Pair>{{0, 1}, {1, 0}});
  // two disjoint 2-chains a0 < b1 and a1 < b0: only (ai, bi) is critical
  const std::vector<Pair> s2{{0, 3}, {1, 2}};
  CHECK(critical_pairs(Poset::from_covers(4, s2)) == std::vector<Pair>{{0, 2}, {1, 3}});
}

TEST_CASE("dimension of small examples") {
  CHECK(*dimension_exact(Poset{}).dimension == 0);
  CHECK(*dimension_exact(chain(5)).dimension == 1);
  CHECK(*dimension_exact(antichain(3)).dimension == 2);
  CHECK(*dimension_exact(powerset_semilattice(1, 64)).dimension == 1);
  CHECK(*dimension_exact(powerset_semilattice(2, 64)).dimension == 2);
  CHECK(*dimension_exact(powerset_semilattice(3, 64)).dimension == 3);
  CHECK(*dimension_exact(figure1(4)).dimension == 2);
  const DimensionResult r = dimension_exact(powerset_semilattice(3, 64));
  REQUIRE(r.realizer);
  CHECK(r.realizer->extensions.size() == 3);
  CHECK(is_realizer(powerset_semilattice(3, 64), *r.realizer));
  CHECK_FALSE(order_dimension(antichain(2), 0));
  CHECK(order_dimension(Poset{}, 0)->extensions.empty());
}

TEST_CASE("the powerset of four points needs four extensions") {
  const Poset p4 = powerset_semilattice(4, 64);
  CHECK_FALSE(order_dimension(p4, 3));
  const auto r = order_dimension(p4, 4);
  REQUIRE(r);
  CHECK(is_realizer(p4, *r));
}

TEST_CASE("dimension agrees with brute force") {
  for (std::size_t n = 1; n <= 5; ++n)
    for (const Poset& p : poset_catalogue(n)) CHECK(dimension_exact(p).dimension == oracle::dimension(p, 4));
  std::mt19937_64 rng(51);
  for (int rep = 0; rep < 20; ++rep) {
    const Poset p = random_poset(6, rng);
    const DimensionResult r = dimension_exact(p);
    CHECK(r.dimension == oracle::dimension(p, 4));
    if (r.realizer) CHECK(is_realizer(p, *r.realizer));
  }
}

TEST_CASE("realizer checks") {
  const Poset a = antichain(2);
  CHECK(is_realizer(a, Realizer{{{0, 1}, {1, 0}}}));
  CHECK_FALSE(is_realizer(a, Realizer{{{0, 1}}}));
  CHECK_FALSE(is_realizer(chain(2), Realizer{{{1, 0}}}));
  CHECK_FALSE(is_realizer(chain(2), Realizer{{{0}}}));
}

TEST_CASE("size limits") {
  CHECK_THROWS_AS(dimension_exact(antichain(11)), SizeLimit);
  CHECK_THROWS_AS(order_dimension(antichain(65), 2), SizeLimit);
}
