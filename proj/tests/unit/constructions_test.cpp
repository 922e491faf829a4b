#include <doctest.h>

#include <map>
#include <set>

#include "latticelab/constructions.hpp"
#include "latticelab/embeddings.hpp"
#include "latticelab/error.hpp"

using namespace latticelab;

namespace {

Poset sierp(const char* alpha, std::size_t stage, PhiStrategy s = PhiStrategy::Identity, std::uint64_t seed = 0) {
  SierpinskisationSpec spec;
  spec.alpha = parse_order_type(alpha);
  spec.stage = stage;
  spec.strategy = s;
  spec.seed = seed;
  return sierpinskisation(spec);
}

bool order_embeds(const Poset& q, const Poset& p) { return find_embedding(q, p, EmbedMode::Order).has_value(); }

}  // namespace

TEST_CASE("sierpinskisation examples") {
  CHECK(sierp("w", 5) == chain(5));
  CHECK(sierp("w*", 4) == antichain(4));
  const Poset e = sierp("eta", 3);
  CHECK(e.lt(0, 2));
  CHECK(e.lt(1, 2));
  CHECK_FALSE(e.comparable(0, 1));
  CHECK(sierp("w", 4, PhiStrategy::Reverse) == antichain(4));
  CHECK(sierp("w", 4, PhiStrategy::Diagonal) == sierp("w", 4, PhiStrategy::Identity));
}

TEST_CASE("explicit phi is validated") {
  SierpinskisationSpec spec;
  spec.alpha = OrderType::omega();
  spec.stage = 3;
  spec.phi = {2, 0, 1};
  const Poset p = sierpinskisation(spec);
  CHECK(p.lt(1, 2));
  CHECK_FALSE(p.comparable(0, 1));
  spec.phi = {0, 0, 1};
  CHECK_THROWS_AS(sierpinskisation(spec), InvalidOrder);
  spec.phi = {0, 1};
  CHECK_THROWS_AS(sierpinskisation(spec), InvalidOrder);
  CHECK_THROWS_AS(parse_phi("sideways"), InvalidOrder);
}

TEST_CASE("seeded random phi is reproducible") {
  CHECK(sierp("w.(2)", 8, PhiStrategy::SeededRandom, 42) == sierp("w.(2)", 8, PhiStrategy::SeededRandom, 42));
}

TEST_CASE("sierpinskisations embed in the product of their two chains") {
  for (const char* a : {"w", "w*", "eta", "w.(2)", "3+eta", "w*+w"})
    for (std::size_t s = 1; s <= 6; ++s)
      for (PhiStrategy st : {PhiStrategy::Identity, PhiStrategy::Reverse, PhiStrategy::SeededRandom}) {
        CAPTURE(a);
        CAPTURE(s);
        const Poset p = sierp(a, s, st, s);
        const Poset grid = product(truncate(OrderType::omega(), p.size()).chain, truncate(parse_order_type(a), s).chain);
        CHECK(order_embeds(p, grid));
      }
}

TEST_CASE("ordinal sierpinskisations are no wider than their column count") {
  for (std::size_t s = 1; s <= 8; ++s) {
    CHECK(width(sierp("w.(2)", s)) <= 2);
    CHECK(width(sierp("w.(3)+1", s)) <= 4);
    CHECK(width(sierp("w", s, PhiStrategy::SeededRandom, s)) <= s);
  }
}

TEST_CASE("monotonic sierpinskisations") {
  CHECK(monotonic_sierp(OrderType::fin(1), 5) == chain(5));
  const Poset m2 = monotonic_sierp(OrderType::fin(2), 4);
  CHECK(width(m2) == 2);
  CHECK(order_embeds(m2, product(chain(4), chain(2))));
  CHECK(order_embeds(monotonic_sierp(OrderType::omega_star(), 4), figure1(5)));
  // each column is climbed in order
  for (const char* a : {"2", "3", "w", "w*", "eta"}) {
    const auto grid = grid_enumeration(parse_order_type(a), 12);
    std::map<std::size_t, std::size_t> next;
    for (const auto& g : grid) CHECK(g.row == next[g.column_rank]++);
  }
}

TEST_CASE("lattice sierpinskisations are join-closed") {
  CHECK(lattice_sierp(OrderType::fin(1), 5) == chain(5));
  for (const char* a : {"w*", "eta", "2", "w", "w.(2)", "3+eta"})
    for (std::size_t s = 1; s <= 6; ++s) {
      CAPTURE(a);
      const Poset l = underline(lattice_sierp(parse_order_type(a), s));
      CHECK(std::holds_alternative<JoinTable>(as_join_semilattice(l)));
    }
}

TEST_CASE("lattice sierpinskisation of two columns closes inside the grid") {
  // brute force: close the monotone points under componentwise max
  const auto grid = grid_enumeration(OrderType::fin(2), 4);
  std::set<std::pair<std::size_t, std::size_t>> pts;
  for (std::size_t k = 0; k < grid.size(); ++k) pts.emplace(k, grid[k].column_rank);
  for (bool grew = true; grew;) {
    grew = false;
    for (auto a : std::vector(pts.begin(), pts.end()))
      for (auto b : std::vector(pts.begin(), pts.end()))
        grew = pts.emplace(std::max(a.first, b.first), std::max(a.second, b.second)).second || grew;
  }
  const Poset l = lattice_sierp(OrderType::fin(2), 4);
  CHECK(l.size() == pts.size());
  for (const auto& [k, c] : pts) CHECK(c < 2);
}

TEST_CASE("figure1 semantics") {
  const Poset d = figure1(3);
  CHECK(d.size() == 4);
  CHECK(d.covers() == std::vector<Pair>{{0, 1}, {0, 3}, {1, 2}, {3, 2}});
  CHECK(d.name(2) == "(0,2)");
  CHECK(figure1(4).size() == 7);
  CHECK_THROWS_AS(figure1(1), InvalidOrder);
  for (std::size_t n = 2; n <= 6; ++n) {
    const Poset f = figure1(n);
    const JoinSemilattice j = JoinSemilattice::from(f);
    auto pair_of = [&](std::size_t x) {
      const std::string& s = f.name(x);
      return std::pair<std::size_t, std::size_t>(std::stoul(s.substr(1)), std::stoul(s.substr(s.find(',') + 1)));
    };
    for (std::size_t x = 1; x < f.size(); ++x)
      for (std::size_t y = 1; y < f.size(); ++y) {
        const auto [i, jj] = pair_of(x);
        const auto [i2, j2] = pair_of(y);
        const auto [zi, zj] = pair_of(j.join(x, y));
        CHECK(zi == std::min(i, i2));
        CHECK(zj == std::max(jj, j2));
      }
  }
}

TEST_CASE("figure1 and the bottomed lattice sierpinskisation of w* embed in each other") {
  for (std::size_t n = 2; n <= 4; ++n) {
    const Poset f = figure1(n);
    const Poset l = build_P_alpha(OrderType::omega_star(), n);
    CAPTURE(n);
    CHECK(order_embeds(f, build_P_alpha(OrderType::omega_star(), n * (n - 1) / 2 + 1)));
    CHECK(order_embeds(l, figure1(l.size())));
  }
}

TEST_CASE("figure2") {
  CHECK(figure2(1) == chain(2));
  CHECK(std::holds_alternative<JoinTable>(as_join_semilattice(figure2(3))));
  CHECK(order_embeds(figure2(4), product(chain(8), truncate(OrderType::eta(), 4).chain)));
}

TEST_CASE("powerset semilattices") {
  CHECK(powerset_semilattice(0, 64).size() == 1);
  CHECK(isomorphic(powerset_semilattice(2, 64), product(chain(2), chain(2))));
  const Poset p3 = powerset_semilattice(3, 64);
  CHECK(p3.size() == 8);
  CHECK(height(p3) == 4);
  CHECK(width(p3) == 3);
  CHECK(p3.name(5) == "{0,2}");
  CHECK_THROWS_AS(powerset_semilattice(7, 64), SizeLimit);
  CHECK(powerset_semilattice(7, 128).size() == 128);
}

TEST_CASE("S, P and Q constructions") {
  CHECK(build_S_alpha(OrderType::omega(), 5) == chain(5));
  CHECK(build_S_alpha(OrderType::fin(3), 5) == chain(3));
  const Poset s = build_S_alpha(parse_order_type("w.(2)+3"), 5);
  CHECK(s.size() == 8);
  CHECK(isomorphic(s, direct_sum(monotonic_sierp(OrderType::fin(2), 5), chain(3))));
  CHECK_THROWS_AS(build_S_alpha(OrderType::omega_star(), 3), NotOrdinal);

  const Poset p = build_P_alpha(OrderType::omega_star(), 4);
  CHECK(p == add_bottom(lattice_sierp(OrderType::omega_star(), 4)));
  CHECK(std::holds_alternative<JoinTable>(as_join_semilattice(p)));
  const Poset ph = build_P_alpha(parse_order_type("2+w*"), 3);
  CHECK(ph.size() == 2 + build_P_alpha(OrderType::omega_star(), 3).size());
  CHECK(height(ph) == 2 + height(build_P_alpha(OrderType::omega_star(), 3)));

  CHECK(build_Q_alpha(OrderType::omega(), 4).order() == chain(5));
}
