#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "latticelab/catalogue.hpp"
#include "latticelab/constructions.hpp"
#include "latticelab/embeddings.hpp"
#include "latticelab/error.hpp"
#include "latticelab/parallel.hpp"

using namespace latticelab;

namespace {

oracle::Mode oracle_mode(EmbedMode m) {
  switch (m) {
    case EmbedMode::Order: return oracle::Mode::Order;
    case EmbedMode::Join: return oracle::Mode::Join;
    case EmbedMode::JoinBottom: return oracle::Mode::JoinBottom;
  }
  return oracle::Mode::Order;
}

Poset diamond() { return powerset_semilattice(2, 64); }

RepresentationContext ctx_of(const Poset& r, const Poset& p) {
  return RepresentationContext::make(r, JoinSemilattice::from(p));
}

std::vector<Bitset> chain_of(std::size_t n, std::initializer_list<std::uint64_t> m) {
  std::vector<Bitset> out;
  for (auto x : m) out.push_back(Bitset::from_mask(n, x));
  return out;
}

}  // namespace

TEST_CASE("mode names") {
  CHECK(parse_mode("order") == EmbedMode::Order);
  CHECK(parse_mode("join") == EmbedMode::Join);
  CHECK(parse_mode("join-bottom") == EmbedMode::JoinBottom);
  CHECK_THROWS_AS(parse_mode("meet"), Error);
  CHECK(std::string(to_string(EmbedMode::JoinBottom)) == "join-bottom");
}

TEST_CASE("embedding examples") {
  const auto f = find_embedding(figure1(3), figure1(4), EmbedMode::JoinBottom);
  REQUIRE(f);
  CHECK(f->map == std::vector<std::size_t>{0, 1, 2, 4});
  CHECK(f->verified);
  CHECK_FALSE(find_embedding(add_bottom(antichain(2)), chain(3), EmbedMode::Order));
  const auto d = find_embedding(figure1(3), diamond(), EmbedMode::JoinBottom);
  REQUIRE(d);
  CHECK(d->map == std::vector<std::size_t>{0, 1, 3, 2});
  CHECK(find_embedding(Poset{}, chain(2), EmbedMode::Order)->map.empty());
  CHECK_FALSE(find_embedding(chain(3), chain(2), EmbedMode::Order));
}

TEST_CASE("join modes need joins") {
  const std::vector<std::size_t> id{0, 1};
  CHECK_THROWS_AS(verify_embedding(antichain(2), antichain(2), id, EmbedMode::Join), ModeUnsupported);
  CHECK(verify_embedding(antichain(2), antichain(2), id, EmbedMode::Order));
  CHECK_THROWS_AS(find_embedding(chain(2), antichain(3), EmbedMode::Join), ModeUnsupported);
}

TEST_CASE("verification rejects bad maps") {
  const Poset c = chain(3);
  CHECK(verify_embedding(c, c, std::vector<std::size_t>{0, 1, 2}, EmbedMode::JoinBottom));
  CHECK_FALSE(verify_embedding(c, c, std::vector<std::size_t>{0, 0, 2}, EmbedMode::Order));
  CHECK_FALSE(verify_embedding(c, c, std::vector<std::size_t>{0, 2, 1}, EmbedMode::Order));
  CHECK_FALSE(verify_embedding(chain(2), c, std::vector<std::size_t>{1, 2}, EmbedMode::JoinBottom));
  CHECK(verify_embedding(chain(2), c, std::vector<std::size_t>{1, 2}, EmbedMode::Join));
  // order embedding that loses a join: the atoms of the diamond into a 2x3 grid
  const Poset g = product(chain(2), chain(3));
  CHECK(verify_embedding(antichain(2), g, std::vector<std::size_t>{1, 3}, EmbedMode::Order));
}

TEST_CASE("searches match brute force on small posets") {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 60; ++rep) {
    const Poset q = random_poset(1 + rep % 4, rng);
    const Poset p = random_poset(3 + rep % 4, rng);
    const auto got = find_embedding(q, p, EmbedMode::Order);
    const auto want = oracle::embedding(q, p, oracle::Mode::Order);
    CHECK(got.has_value() == want.has_value());
    if (got && want) CHECK(got->map == *want);
  }
  std::vector<Poset> lattices;
  for (std::size_t n = 1; n <= 6; ++n)
    for (const Poset& l : lattice_catalogue(n)) lattices.push_back(l);
  for (const Poset& q : lattices) {
    if (q.size() > 4) continue;
    for (const Poset& p : lattices)
      for (EmbedMode m : {EmbedMode::Order, EmbedMode::Join, EmbedMode::JoinBottom}) {
        const auto got = find_embedding(q, p, m);
        const auto want = oracle::embedding(q, p, oracle_mode(m));
        CHECK(got.has_value() == want.has_value());
        if (got && want) CHECK(got->map == *want);
      }
  }
}

TEST_CASE("parallel search returns the same witness") {
  const Poset q = powerset_semilattice(3, 64);
  const Poset p = product(powerset_semilattice(3, 64), chain(2));
  set_thread_count(1);
  const auto one = find_embedding(q, p, EmbedMode::Join);
  set_thread_count(4);
  const auto four = find_embedding(q, p, EmbedMode::Join);
  const auto none = find_embedding(figure1(5), powerset_semilattice(5, 64), EmbedMode::JoinBottom);
  set_thread_count(1);
  REQUIRE(one);
  REQUIRE(four);
  CHECK(one->map == four->map);
  CHECK_FALSE(none);
}

TEST_CASE("condition checks") {
  const auto ctx = ctx_of(antichain(2), chain(2));
  // fingen of the antichain: {}, {0}, {1}, {0,1}; collapse everything above empty
  const std::vector<std::size_t> g{0, 1, 1, 1};
  const ConditionVerdict v = check_condition_4(ctx, g);
  CHECK_FALSE(v.pass);
  REQUIRE(v.violation);
  CHECK(v.violation->x == 1);
  CHECK(v.violation->ys == std::vector<std::size_t>{2});
  CHECK_FALSE(find_condition_4_map(ctx));
  CHECK_FALSE(find_condition_5_map(ctx));

  const auto ok = ctx_of(antichain(2), diamond());
  const auto g4 = find_condition_4_map(ok);
  REQUIRE(g4);
  CHECK(check_condition_4(ok, *g4).pass);
  const auto h5 = find_condition_5_map(ok);
  REQUIRE(h5);
  CHECK(check_condition_5(ok, *h5).pass);
  CHECK(check_condition_5(ok, *h5).tuples_checked > 0);
}

TEST_CASE("condition 5 on a chain target") {
  // R a 2-chain: h strictly increasing and never the bottom
  const auto ctx = ctx_of(chain(2), chain(3));
  CHECK(check_condition_5(ctx, std::vector<std::size_t>{1, 2}).pass);
  CHECK_FALSE(check_condition_5(ctx, std::vector<std::size_t>{1, 1}).pass);
  CHECK_FALSE(check_condition_5(ctx, std::vector<std::size_t>{0, 1}).pass);
}

TEST_CASE("contexts need a bottom") {
  const std::vector<Pair> vee{{0, 2}, {1, 2}};
  CHECK_THROWS_AS(ctx_of(chain(1), Poset::from_covers(3, vee)), PreconditionFailed);
  const auto ctx = ctx_of(chain(3), chain(4));
  CHECK(ctx.principal(0) == 1);
  CHECK(ctx.principal(2) == 3);
}

TEST_CASE("round trips through the three maps") {
  const auto ctx = ctx_of(antichain(2), diamond());
  const auto rt = round_trip(ctx);
  REQUIRE(rt);
  CHECK(rt->g_check.pass);
  CHECK(rt->h_check.pass);
  CHECK(rt->rebuilt.verified);
  CHECK(verify_embedding(ctx.downsets_r_order, ctx.ideals_p_order, rt->rebuilt.map, EmbedMode::JoinBottom));
  CHECK_FALSE(round_trip(ctx_of(antichain(2), chain(4))));
}

TEST_CASE("derivations report broken inputs") {
  const auto ctx = ctx_of(antichain(2), diamond());
  const std::vector<std::size_t> constant(ctx.downsets_r.size(), 0);
  CHECK_THROWS_AS(derive_g_from_f(ctx, constant), ClaimViolation);
  const std::vector<std::size_t> flat(ctx.fingen_r.size(), 0);
  try {
    derive_h_from_g(ctx, flat);
    FAIL("expected the condition to fail");
  } catch (const PreconditionFailed& e) {
    CHECK(std::string(e.what()).find("x=") != std::string::npos);
  }
  CHECK_THROWS_AS(build_f_from_h(ctx, std::vector<std::size_t>{1, 1}), PreconditionFailed);
}

TEST_CASE("pipeline over small lattices") {
  for (std::size_t rn = 1; rn <= 3; ++rn)
    for (const Poset& r : poset_catalogue(rn))
      for (std::size_t pn = 1; pn <= 6; ++pn)
        for (const Poset& p : lattice_catalogue(pn)) {
          const auto ctx = ctx_of(r, p);
          const bool f = find_embedding(ctx.downsets_r_order, ctx.ideals_p_order, EmbedMode::Order).has_value();
          const bool g = find_condition_4_map(ctx).has_value();
          const bool h = find_condition_5_map(ctx).has_value();
          CHECK(f == g);
          CHECK(g == h);
          const auto rt = round_trip(ctx);
          CHECK(rt.has_value() == f);
          if (rt) CHECK(rt->rebuilt.verified);
        }
}

TEST_CASE("extension to ideals") {
  const JoinSemilattice q = JoinSemilattice::from(figure1(3));
  const JoinSemilattice l = JoinSemilattice::from(figure1(4));
  const auto g = find_embedding(figure1(3), figure1(4), EmbedMode::JoinBottom);
  REQUIRE(g);
  const auto gbar = extend_to_ideals(q, l, g->map);
  // finite ideals are principal, so gbar agrees with g on generators
  const DownsetLattice iq = ideals_of(figure1(3));
  REQUIRE(gbar.size() == iq.size());
  for (std::size_t x = 0; x < 4; ++x) {
    const auto at = iq.index_of(figure1(3).down(x));
    REQUIRE(at);
    CHECK(gbar[*at] == g->map[x]);
  }
  const JoinSemilattice c = JoinSemilattice::from(chain(3));
  CHECK_THROWS_AS(extend_to_ideals(JoinSemilattice::from(diamond()), c, std::vector<std::size_t>{0, 1, 1, 2}),
                  NotJoinPreserving);
}

TEST_CASE("generated subsemilattices are closures") {
  const JoinSemilattice p3 = JoinSemilattice::from(powerset_semilattice(3, 64));
  CHECK(generated_subsemilattice(p3, Bitset(8, {1, 2, 4})).elements.size() == 7);
  CHECK(generated_subsemilattice(p3, Bitset(8, {1, 2, 4}), true).elements.size() == 8);
  std::mt19937_64 rng(43);
  for (std::size_t n = 1; n <= 6; ++n)
    for (const Poset& l : lattice_catalogue(n)) {
      const JoinSemilattice j = JoinSemilattice::from(l);
      for (int rep = 0; rep < 8; ++rep) {
        const Bitset a = Bitset::from_mask(n, rng() & ((std::uint64_t{1} << n) - 1));
        const Subsemilattice s = generated_subsemilattice(j, a);
        Bitset closed(n);
        for (auto x : s.elements) closed.set(x);
        // extensive, idempotent, join-closed
        CHECK((a - closed).none());
        CHECK(generated_subsemilattice(j, closed).elements == s.elements);
        for (auto x : s.elements)
          for (auto y : s.elements) CHECK(closed.test(j.join(x, y)));
        CHECK(s.order.size() == s.elements.size());
      }
    }
}

TEST_CASE("bottom repair") {
  const JoinSemilattice c2 = JoinSemilattice::from(chain(2));
  const JoinSemilattice c3 = JoinSemilattice::from(chain(3));
  const auto r = repair_bottom(c2, c3, std::vector<std::size_t>{1, 2});
  CHECK(r == std::vector<std::size_t>{0, 2});
  CHECK(verify_embedding(chain(2), chain(3), r, EmbedMode::JoinBottom));
  const JoinSemilattice d = JoinSemilattice::from(diamond());
  CHECK_THROWS_AS(repair_bottom(d, c3, std::vector<std::size_t>{0, 1, 1, 2}), NotJoinPreserving);
}

TEST_CASE("lifting to ideals follows principal downsets") {
  const JoinSemilattice q = JoinSemilattice::from(chain(2));
  const JoinSemilattice p = JoinSemilattice::from(diamond());
  const auto lifted = lift_to_ideals(q, p, std::vector<std::size_t>{0, 3});
  const DownsetLattice ip = ideals_of(diamond());
  REQUIRE(lifted.size() == 2);
  CHECK(ip.downsets[lifted[0]] == diamond().down(0));
  CHECK(ip.downsets[lifted[1]] == diamond().down(3));
}

TEST_CASE("finitely generated downsets embed with joins whenever they embed in order") {
  // fin(R) into P in order gives fin(R) into P with joins, so downsets(R)
  // into the ideals of P with joins
  for (std::size_t rn = 1; rn <= 3; ++rn)
    for (const Poset& r : poset_catalogue(rn)) {
      const DownsetLattice fin = fin_gen_downsets(r);
      for (std::size_t pn = 1; pn <= 6; ++pn)
        for (const Poset& p : lattice_catalogue(pn)) {
          const auto f = find_embedding(fin.order(), p, EmbedMode::Order);
          const bool lifted =
              find_embedding(all_downsets(r).order(), ideals_of(p).order(), EmbedMode::JoinBottom).has_value();
          if (!f) continue;
          const EmbeddingWitness g = fingen_join_repair(fin, JoinSemilattice::from(p), f->map);
          CHECK(g.verified);
          CHECK(lifted);
        }
    }
}

TEST_CASE("powerset representations") {
  const auto [k, rep] = powerset_representation(JoinSemilattice::from(figure1(3)));
  CHECK(k == 2);
  CHECK(rep.size() == 4);
  CHECK(powerset_representation(JoinSemilattice::from(chain(4))).first == 3);
  CHECK_THROWS_AS(powerset_representation(JoinSemilattice::from(chain(8)), 6), NotPowersetEmbeddable);
}

TEST_CASE("extraction examples") {
  const JoinSemilattice p2 = JoinSemilattice::from(diamond());
  const SierpExtraction e = extract_sierp(p2, chain_of(4, {1, 3, 15}));
  CHECK(e.s.size() == 2);
  CHECK(e.s == chain(2));
  CHECK(e.r.covers().empty());
  CHECK(e.checks.size() == 5);

  const SierpExtraction c = extract_sierp(JoinSemilattice::from(chain(3)), chain_of(3, {1, 3, 7}));
  CHECK(c.s == chain(2));

  const SierpExtraction p3 = extract_sierp(JoinSemilattice::from(powerset_semilattice(3, 64)),
                                           chain_of(8, {1, 3, 15, 255}));
  CHECK(p3.s == chain(3));
  CHECK(p3.r == antichain(3));
}

TEST_CASE("extraction rejects bad chains") {
  const JoinSemilattice p2 = JoinSemilattice::from(diamond());
  CHECK_THROWS_AS(extract_sierp(p2, chain_of(4, {3, 3})), ChainNotStrict);
  CHECK_THROWS_AS(extract_sierp(p2, chain_of(4, {3, 1})), ChainNotStrict);
  CHECK_THROWS_AS(extract_sierp(p2, chain_of(4, {1, 6})), PreconditionFailed);
}
