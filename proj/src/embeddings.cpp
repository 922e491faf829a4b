#include "latticelab/embeddings.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <tuple>

#include "latticelab/constructions.hpp"
#include "latticelab/error.hpp"
#include "latticelab/parallel.hpp"

namespace latticelab {

EmbedMode parse_mode(std::string_view name) {
  if (name == "order") return EmbedMode::Order;
  if (name == "join") return EmbedMode::Join;
  if (name == "join-bottom") return EmbedMode::JoinBottom;
  throw ModeUnsupported("unknown embedding mode '" + std::string(name) + "'");
}

const char* to_string(EmbedMode mode) {
  switch (mode) {
    case EmbedMode::Order: return "order";
    case EmbedMode::Join: return "join";
    case EmbedMode::JoinBottom: return "join-bottom";
  }
  return "";
}

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

JoinTable joins_or_throw(const Poset& p, const char* which) {
  auto r = as_join_semilattice(p);
  if (auto* f = std::get_if<JoinFailure>(&r))
    throw ModeUnsupported(std::string(which) + " has no join for elements " + std::to_string(f->x) + " and " +
                          std::to_string(f->y));
  return std::get<JoinTable>(std::move(r));
}

std::string bits(const Bitset& b) { return b.to_string(); }

}  // namespace

bool verify_embedding(const Poset& q, const Poset& p, std::span<const std::size_t> map, EmbedMode mode) {
  const std::size_t m = q.size();
  if (map.size() != m) return false;
  std::vector<char> used(p.size(), 0);
  for (std::size_t t : map) {
    if (t >= p.size() || used[t]) return false;
    used[t] = 1;
  }
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y)
      if (q.leq(x, y) != p.leq(map[x], map[y])) return false;
  if (mode == EmbedMode::Order || m == 0) return true;
  const JoinTable jq = joins_or_throw(q, "source");
  const JoinTable jp = joins_or_throw(p, "target");
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = x + 1; y < m; ++y)
      if (map[jq.join(x, y)] != jp.join(map[x], map[y])) return false;
  if (mode == EmbedMode::JoinBottom) {
    if (!jq.bottom() || !jp.bottom()) throw ModeUnsupported("finite joins need least elements on both sides");
    if (map[*jq.bottom()] != *jp.bottom()) return false;
  }
  return true;
}

namespace {

struct Triple {
  std::size_t x, y, z;
};

class EmbeddingSearch {
public:
  EmbeddingSearch(const Poset& q, const Poset& p, EmbedMode mode) : q_(q), p_(p), mode_(mode) {
    const std::size_t m = q.size();
    if (mode != EmbedMode::Order && m > 0) {
      const JoinTable jq = joins_or_throw(q, "source");
      jp_ = joins_or_throw(p, "target");
      // comparable pairs are handled by the order test
      triples_.resize(m);
      for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = x + 1; y < m; ++y) {
          if (q.comparable(x, y)) continue;
          const std::size_t z = jq.join(x, y);
          triples_[std::max({x, y, z})].push_back({x, y, z});
        }
      if (mode == EmbedMode::JoinBottom) {
        if (!jq.bottom() || !jp_.bottom()) throw ModeUnsupported("finite joins need least elements on both sides");
        q_bottom_ = *jq.bottom();
        p_bottom_ = *jp_.bottom();
      }
    }
    q_up_.resize(m);
    q_down_.resize(m);
    for (std::size_t x = 0; x < m; ++x) {
      q_up_[x] = q.up(x).count();
      q_down_[x] = q.down(x).count();
    }
    p_up_.resize(p.size());
    p_down_.resize(p.size());
    for (std::size_t t = 0; t < p.size(); ++t) {
      p_up_[t] = p.up(t).count();
      p_down_[t] = p.down(t).count();
    }
  }

  // Least completion with element 0 pinned to `first` (npos: no pin).
  std::optional<std::vector<std::size_t>> run(std::size_t first = npos) {
    const std::size_t m = q_.size();
    map_.assign(m, npos);
    used_.assign(p_.size(), 0);
    if (m == 0) return map_;
    if (m > p_.size()) return std::nullopt;
    if (first != npos) {
      if (!fits(0, first)) return std::nullopt;
      assign(0, first);
      if (rec(1)) return map_;
      return std::nullopt;
    }
    if (rec(0)) return map_;
    return std::nullopt;
  }

  bool fits(std::size_t i, std::size_t t) const {
    if (used_[t]) return false;
    if (q_up_[i] > p_up_[t] || q_down_[i] > p_down_[t]) return false;
    if (i == q_bottom_ && t != p_bottom_) return false;
    for (std::size_t a = 0; a < i; ++a) {
      const std::size_t s = map_[a];
      if (q_.leq(a, i) != p_.leq(s, t) || q_.leq(i, a) != p_.leq(t, s)) return false;
    }
    if (!triples_.empty()) {
      auto at = [&](std::size_t e) { return e == i ? t : map_[e]; };
      for (const auto& [x, y, z] : triples_[i])
        if (at(z) != jp_.join(at(x), at(y))) return false;
    }
    return true;
  }

private:
  void assign(std::size_t i, std::size_t t) {
    map_[i] = t;
    used_[t] = 1;
  }

  bool rec(std::size_t i) {
    if (i == q_.size()) return true;
    for (std::size_t t = 0; t < p_.size(); ++t) {
      if (!fits(i, t)) continue;
      assign(i, t);
      if (rec(i + 1)) return true;
      used_[t] = 0;
      map_[i] = npos;
    }
    return false;
  }

  const Poset& q_;
  const Poset& p_;
  EmbedMode mode_;
  JoinTable jp_;
  std::vector<std::vector<Triple>> triples_;
  std::size_t q_bottom_ = npos, p_bottom_ = npos;
  std::vector<std::size_t> q_up_, q_down_, p_up_, p_down_;
  std::vector<std::size_t> map_;
  std::vector<char> used_;
};

}  // namespace

std::optional<EmbeddingWitness> find_embedding(const Poset& q, const Poset& p, EmbedMode mode) {
  std::optional<std::vector<std::size_t>> found;
  if (thread_count() > 1 && q.size() > 1 && q.size() <= p.size()) {
    // one subtree per candidate image of element 0; keep the least success
    std::vector<std::optional<std::vector<std::size_t>>> per(p.size());
    EmbeddingSearch probe(q, p, mode);  // surfaces ModeUnsupported before fan-out
    parallel_for(p.size(), [&](std::size_t t) { per[t] = EmbeddingSearch(q, p, mode).run(t); });
    for (auto& r : per)
      if (r) {
        found = std::move(r);
        break;
      }
  } else {
    found = EmbeddingSearch(q, p, mode).run();
  }
  if (!found) return std::nullopt;
  EmbeddingWitness w{q, p, std::move(*found), mode, false};
  w.verified = verify_embedding(q, p, w.map, mode);
  if (!w.verified) throw ConstructionInvariantViolated("embedding_search", "search returned an invalid map");
  return w;
}

// ------------------------------------------------- downset representations

RepresentationContext RepresentationContext::make(const Poset& r, const JoinSemilattice& p) {
  if (!p.bottom()) throw PreconditionFailed("the target semilattice needs a least element");
  RepresentationContext c{r, p, all_downsets(r), fin_gen_downsets(r), ideals_of(p.order), {}, {}};
  c.downsets_r_order = c.downsets_r.order();
  c.ideals_p_order = c.ideals_p.order();
  return c;
}

std::size_t RepresentationContext::principal(std::size_t x) const { return *fingen_r.index_of(r.down(x)); }

namespace {

// Tuples (x, y1 <= ... <= yn), n = 0..bound, x and every yi below `limit`;
// when `must` is set only tuples mentioning it.  Stops at the first tuple
// for which `violates` holds.
template <typename Violates>
bool scan_tuples(std::size_t limit, std::size_t bound, std::size_t must, Violates&& violates,
                 ConditionVerdict& verdict) {
  std::vector<std::size_t> ys;
  std::function<bool(std::size_t, std::size_t, std::size_t)> gen = [&](std::size_t x, std::size_t start,
                                                                        std::size_t n) -> bool {
    if (ys.size() == n) {
      if (must != npos && x != must && std::find(ys.begin(), ys.end(), must) == ys.end()) return false;
      ++verdict.tuples_checked;
      if (!violates(x, ys)) return false;
      verdict.pass = false;
      verdict.violation = TupleViolation{x, ys};
      return true;
    }
    for (std::size_t y = start; y < limit; ++y) {
      ys.push_back(y);
      const bool stop = gen(x, y, n);
      ys.pop_back();
      if (stop) return true;
    }
    return false;
  };
  for (std::size_t n = 0; n <= bound; ++n)
    for (std::size_t x = 0; x < limit; ++x)
      if (gen(x, 0, n)) return true;
  return false;
}

std::size_t join_of(const JoinSemilattice& p, std::span<const std::size_t> values, const std::vector<std::size_t>& ys) {
  std::size_t acc = *p.bottom();
  for (std::size_t y : ys) acc = p.join(acc, values[y]);
  return acc;
}

auto condition_4_violation(const RepresentationContext& ctx, std::span<const std::size_t> g) {
  return [&ctx, g](std::size_t x, const std::vector<std::size_t>& ys) {
    Bitset cover(ctx.r.size());
    for (std::size_t y : ys) cover |= ctx.fingen_r.downsets[y];
    if (ctx.fingen_r.downsets[x].subset_of(cover)) return false;
    return ctx.p.order.leq(g[x], join_of(ctx.p, g, ys));
  };
}

auto condition_5_violation(const RepresentationContext& ctx, std::span<const std::size_t> h) {
  return [&ctx, h](std::size_t x, const std::vector<std::size_t>& ys) {
    for (std::size_t y : ys)
      if (ctx.r.leq(x, y)) return false;
    return ctx.p.order.leq(h[x], join_of(ctx.p, h, ys));
  };
}

void check_values(std::span<const std::size_t> values, std::size_t domain, std::size_t range) {
  if (values.size() != domain) throw PreconditionFailed("map has the wrong length");
  for (std::size_t v : values)
    if (v >= range) throw PreconditionFailed("map value out of range");
}

std::string describe(const TupleViolation& v) {
  std::string s = "x=" + std::to_string(v.x) + " ys=[";
  for (std::size_t i = 0; i < v.ys.size(); ++i) s += (i ? "," : "") + std::to_string(v.ys[i]);
  return s + "]";
}

template <typename MakeViolation>
std::optional<std::vector<std::size_t>> find_condition_map(std::size_t domain, std::size_t range, std::size_t bound,
                                                           MakeViolation&& make) {
  std::vector<std::size_t> values(domain, 0);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == domain) return true;
    for (std::size_t t = 0; t < range; ++t) {
      values[i] = t;
      ConditionVerdict v;
      const std::span<const std::size_t> partial(values.data(), domain);
      if (scan_tuples(i + 1, bound, i, make(partial), v)) continue;
      if (rec(i + 1)) return true;
    }
    return false;
  };
  if (rec(0)) return values;
  return std::nullopt;
}

}  // namespace

ConditionVerdict check_condition_4(const RepresentationContext& ctx, std::span<const std::size_t> g,
                                   std::size_t bound) {
  check_values(g, ctx.fingen_r.size(), ctx.p.size());
  ConditionVerdict verdict;
  scan_tuples(ctx.fingen_r.size(), bound, npos, condition_4_violation(ctx, g), verdict);
  return verdict;
}

ConditionVerdict check_condition_5(const RepresentationContext& ctx, std::span<const std::size_t> h,
                                   std::size_t bound) {
  check_values(h, ctx.r.size(), ctx.p.size());
  ConditionVerdict verdict;
  scan_tuples(ctx.r.size(), bound, npos, condition_5_violation(ctx, h), verdict);
  return verdict;
}

std::optional<std::vector<std::size_t>> find_condition_4_map(const RepresentationContext& ctx, std::size_t bound) {
  return find_condition_map(ctx.fingen_r.size(), ctx.p.size(), bound,
                            [&](std::span<const std::size_t> g) { return condition_4_violation(ctx, g); });
}

std::optional<std::vector<std::size_t>> find_condition_5_map(const RepresentationContext& ctx, std::size_t bound) {
  return find_condition_map(ctx.r.size(), ctx.p.size(), bound,
                            [&](std::span<const std::size_t> h) { return condition_5_violation(ctx, h); });
}

std::vector<std::size_t> derive_g_from_f(const RepresentationContext& ctx, std::span<const std::size_t> f) {
  check_values(f, ctx.downsets_r.size(), ctx.ideals_p.size());
  const Poset& r = ctx.r;
  std::vector<std::size_t> g(ctx.fingen_r.size());
  for (std::size_t xi = 0; xi < ctx.fingen_r.size(); ++xi) {
    const Bitset& x = ctx.fingen_r.downsets[xi];
    const Bitset& fx = ctx.ideals_p.downsets[f[*ctx.downsets_r.index_of(x)]];
    Bitset blocked(ctx.p.size());
    r.maximal(x).for_each([&](std::size_t a) {
      const Bitset outside = r.all() - r.up(a);
      blocked |= ctx.ideals_p.downsets[f[*ctx.downsets_r.index_of(outside)]];
    });
    const Bitset candidates = fx - blocked;
    if (candidates.none()) throw ClaimViolation("no element of f(X) escapes the blocking ideals for X = " + bits(x));
    g[xi] = candidates.first();
  }
  return g;
}

std::vector<std::size_t> derive_h_from_g(const RepresentationContext& ctx, std::span<const std::size_t> g,
                                         std::size_t bound) {
  const ConditionVerdict v = check_condition_4(ctx, g, bound);
  if (!v.pass) throw PreconditionFailed("g fails the separation condition at " + describe(*v.violation));
  std::vector<std::size_t> h(ctx.r.size());
  for (std::size_t x = 0; x < ctx.r.size(); ++x) h[x] = g[ctx.principal(x)];
  return h;
}

EmbeddingWitness build_f_from_h(const RepresentationContext& ctx, std::span<const std::size_t> h,
                                std::size_t bound) {
  const ConditionVerdict v = check_condition_5(ctx, h, bound);
  if (!v.pass) throw PreconditionFailed("h fails the separation condition at " + describe(*v.violation));
  std::vector<std::size_t> map(ctx.downsets_r.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    Bitset image(ctx.p.size());
    ctx.downsets_r.downsets[i].for_each([&](std::size_t x) { image.set(h[x]); });
    map[i] = *ctx.ideals_p.index_of(generated_ideal(ctx.p, image));
  }
  EmbeddingWitness w{ctx.downsets_r_order, ctx.ideals_p_order, std::move(map), EmbedMode::JoinBottom, false};
  w.verified = verify_embedding(w.source, w.target, w.map, w.mode);
  if (!w.verified) throw ConstructionInvariantViolated("rebuilt_embedding", "generated-ideal map is not a join embedding");
  return w;
}

std::optional<RoundTrip> round_trip(const RepresentationContext& ctx, std::size_t bound) {
  auto f = find_embedding(ctx.downsets_r_order, ctx.ideals_p_order, EmbedMode::Order);
  if (!f) return std::nullopt;
  RoundTrip out;
  out.f = std::move(*f);
  out.g = derive_g_from_f(ctx, out.f.map);
  out.g_check = check_condition_4(ctx, out.g, bound);
  out.h = derive_h_from_g(ctx, out.g, bound);
  out.h_check = check_condition_5(ctx, out.h, bound);
  out.rebuilt = build_f_from_h(ctx, out.h, bound);
  return out;
}

namespace {

void require_bottoms(const JoinSemilattice& q, const JoinSemilattice& l) {
  if (!q.bottom() || !l.bottom()) throw PreconditionFailed("both semilattices need a least element");
}

void require_finite_joins(const JoinSemilattice& q, const JoinSemilattice& l, std::span<const std::size_t> g) {
  if (g[*q.bottom()] != *l.bottom()) throw NotJoinPreserving(*q.bottom(), *q.bottom());
  for (std::size_t x = 0; x < q.size(); ++x)
    for (std::size_t y = x + 1; y < q.size(); ++y)
      if (g[q.join(x, y)] != l.join(g[x], g[y])) throw NotJoinPreserving(x, y);
}

std::size_t join_over(const JoinSemilattice& l, std::span<const std::size_t> g, const Bitset& xs) {
  std::size_t acc = *l.bottom();
  xs.for_each([&](std::size_t x) { acc = l.join(acc, g[x]); });
  return acc;
}

}  // namespace

std::vector<std::size_t> extend_to_ideals(const JoinSemilattice& q, const JoinSemilattice& l,
                                          std::span<const std::size_t> g) {
  check_values(g, q.size(), l.size());
  require_bottoms(q, l);
  require_finite_joins(q, l, g);
  const DownsetLattice ideals = ideals_of(q.order);
  const std::size_t n = ideals.size();
  std::vector<std::size_t> gbar(n);
  for (std::size_t i = 0; i < n; ++i) gbar[i] = join_over(l, g, ideals.downsets[i]);

  auto check_family = [&](const std::vector<std::size_t>& family) {
    Bitset united(q.size());
    std::size_t rhs = *l.bottom();
    for (std::size_t j : family) {
      united |= ideals.downsets[j];
      rhs = l.join(rhs, gbar[j]);
    }
    const std::size_t joined = *ideals.index_of(generated_ideal(q, united));
    if (gbar[joined] != rhs)
      throw ConstructionInvariantViolated("ideal_family_joins", "extension misses the join of a family of ideals");
  };
  if (n <= 12) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      std::vector<std::size_t> family;
      for (std::size_t j = 0; j < n; ++j)
        if (mask >> j & 1U) family.push_back(j);
      check_family(family);
    }
  } else {
    check_family({});
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) check_family({i, j});
  }

  // any generating set gives the same join
  for (std::size_t i = 0; i < n; ++i) {
    const Bitset& ideal = ideals.downsets[i];
    auto check_generators = [&](const Bitset& a) {
      if (!(generated_ideal(q, a) == ideal)) return;
      if (join_over(l, g, a) != gbar[i])
        throw ConstructionInvariantViolated("generator_joins", "a generating set of ideal " + bits(ideal) +
                                                                   " has a different join");
    };
    const auto members = ideal.members();
    if (members.size() <= 12) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << members.size()); ++mask) {
        Bitset a(q.size());
        for (std::size_t k = 0; k < members.size(); ++k)
          if (mask >> k & 1U) a.set(members[k]);
        check_generators(a);
      }
    } else {
      check_generators(ideal);
      check_generators(q.order.maximal(ideal));
    }
  }
  return gbar;
}

Subsemilattice generated_subsemilattice(const JoinSemilattice& p, const Bitset& a, bool with_bottom) {
  Bitset closed = a;
  if (with_bottom && p.bottom()) closed.set(*p.bottom());
  for (bool grew = true; grew;) {
    grew = false;
    const auto members = closed.members();
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        const std::size_t z = p.join(members[i], members[j]);
        if (!closed.test(z)) {
          closed.set(z);
          grew = true;
        }
      }
  }
  Subsemilattice out;
  out.elements = closed.members();
  out.order = p.order.induced(out.elements);
  return out;
}

std::vector<std::size_t> repair_bottom(const JoinSemilattice& q, const JoinSemilattice& p,
                                       std::span<const std::size_t> f) {
  check_values(f, q.size(), p.size());
  require_bottoms(q, p);
  for (std::size_t x = 0; x < q.size(); ++x)
    for (std::size_t y = x + 1; y < q.size(); ++y)
      if (f[q.join(x, y)] != p.join(f[x], f[y])) throw NotJoinPreserving(x, y);
  std::vector<std::size_t> g(f.begin(), f.end());
  g[*q.bottom()] = *p.bottom();
  if (!verify_embedding(q.order, p.order, g, EmbedMode::JoinBottom))
    throw ConstructionInvariantViolated("bottom_repair", "repaired map is not a finite-join embedding");
  return g;
}

std::vector<std::size_t> lift_to_ideals(const JoinSemilattice& q, const JoinSemilattice& p,
                                        std::span<const std::size_t> f) {
  check_values(f, q.size(), p.size());
  const DownsetLattice iq = ideals_of(q.order);
  const DownsetLattice ip = ideals_of(p.order);
  std::vector<std::size_t> out(iq.size());
  for (std::size_t i = 0; i < iq.size(); ++i) {
    Bitset image(p.size());
    iq.downsets[i].for_each([&](std::size_t x) { image.set(f[x]); });
    const auto idx = ip.index_of(p.order.down_closure(image));
    if (!idx) throw PreconditionFailed("the image of ideal " + bits(iq.downsets[i]) + " does not generate an ideal");
    out[i] = *idx;
  }
  return out;
}

EmbeddingWitness fingen_join_repair(const DownsetLattice& fingen, const JoinSemilattice& p,
                                    std::span<const std::size_t> f) {
  check_values(f, fingen.size(), p.size());
  if (!p.bottom()) throw PreconditionFailed("the target semilattice needs a least element");
  const Poset& r = fingen.base;
  std::vector<std::size_t> g(fingen.size());
  for (std::size_t i = 0; i < fingen.size(); ++i) {
    std::size_t acc = *p.bottom();
    fingen.downsets[i].for_each([&](std::size_t x) { acc = p.join(acc, f[*fingen.index_of(r.down(x))]); });
    g[i] = acc;
  }
  EmbeddingWitness w{fingen.order(), p.order, std::move(g), EmbedMode::JoinBottom, false};
  w.verified = verify_embedding(w.source, w.target, w.map, w.mode);
  return w;
}

// ---------------------------------------------------------- extraction

std::pair<std::size_t, std::vector<std::uint64_t>> powerset_representation(const JoinSemilattice& p,
                                                                           std::size_t max_ground) {
  for (std::size_t k = 0; k <= max_ground; ++k) {
    if ((std::size_t{1} << k) < p.size()) continue;
    const Poset target = powerset_semilattice(k, std::size_t{1} << k);
    if (auto w = find_embedding(p.order, target, EmbedMode::JoinBottom))
      return {k, std::vector<std::uint64_t>(w->map.begin(), w->map.end())};
  }
  throw NotPowersetEmbeddable("no finite-join embedding into the subsets of " + std::to_string(max_ground) +
                              " points");
}

SierpExtraction extract_sierp(const JoinSemilattice& p, std::span<const Bitset> ideal_chain) {
  if (ideal_chain.empty()) throw ChainNotStrict("the ideal chain is empty");
  for (const auto& ideal : ideal_chain)
    if (ideal.size() != p.size() || ideal.none() || !p.order.is_downset(ideal) || !is_directed(p.order, ideal))
      throw PreconditionFailed("chain member " + bits(ideal) + " is not an ideal");
  for (std::size_t b = 0; b + 1 < ideal_chain.size(); ++b)
    if (!ideal_chain[b].subset_of(ideal_chain[b + 1]) || ideal_chain[b] == ideal_chain[b + 1])
      throw ChainNotStrict("chain is not strictly increasing at step " + std::to_string(b));

  SierpExtraction out;
  std::tie(out.ground, out.set_rep) = powerset_representation(p);
  const std::set<std::uint64_t> members(out.set_rep.begin(), out.set_rep.end());

  std::vector<std::uint64_t> unions;
  for (const auto& ideal : ideal_chain) {
    std::uint64_t u = 0;
    ideal.for_each([&](std::size_t e) { u |= out.set_rep[e]; });
    unions.push_back(u);
  }
  const std::size_t m = ideal_chain.size() - 1;
  for (std::size_t b = 0; b < m; ++b) {
    const std::uint64_t fresh = unions[b + 1] & ~unions[b];
    if (fresh == 0) throw ConstructionInvariantViolated("unions_increase", "step " + std::to_string(b) + " adds no point");
    const std::size_t x = static_cast<std::size_t>(std::countr_zero(fresh));
    std::uint64_t best = 0;
    bool found = false;
    for (std::uint64_t s : members)  // ascending
      if ((s >> x & 1U) && (s & ~unions[b + 1]) == 0) {
        best = s;
        found = true;
        break;
      }
    if (!found) throw ConstructionInvariantViolated("witness_set", "no member covers point " + std::to_string(x));
    out.picked.push_back(x);
    out.witness_sets.push_back(best);
  }

  // rho and its closure on steps
  std::vector<Bitset> up(m, Bitset(m));
  for (std::size_t b = 0; b < m; ++b) up[b].set(b);
  for (std::size_t hi = 0; hi < m; ++hi)
    for (std::size_t lo = 0; lo < hi; ++lo)
      if (out.witness_sets[hi] >> out.picked[lo] & 1U) {
        out.rho.emplace_back(lo, hi);
        up[lo].set(hi);
      }
  // x_b' in F_b'' forces b' < b'': a later point is never inside an earlier union
  for (std::size_t hi = 0; hi < m; ++hi)
    for (std::size_t lo = hi + 1; lo < m; ++lo)
      if (out.witness_sets[hi] >> out.picked[lo] & 1U)
        throw ConstructionInvariantViolated("linear_order_extends", "a witness set reaches a later point");
  if (!close_transitively(up)) throw ConstructionInvariantViolated("linear_order_extends", "closure has a cycle");
  std::vector<std::string> names;
  for (std::size_t x : out.picked) names.push_back(std::to_string(x));
  out.r = Poset::from_up_rows(up, names);
  out.checks.push_back("linear_order_extends");

  // each down-set is reached through the witness sets of earlier steps
  for (std::size_t b = 0; b < m; ++b) {
    Bitset expect(m);
    expect.set(b);
    for (std::size_t lo = 0; lo < b; ++lo)
      if (out.witness_sets[b] >> out.picked[lo] & 1U) expect |= out.r.down(lo);
    if (!(expect == out.r.down(b)))
      throw ConstructionInvariantViolated("principal_downsets_finite", "down-set of step " + std::to_string(b) +
                                                                           " is not generated by its witness set");
  }
  out.checks.push_back("principal_downsets_finite");

  auto phi = [&](const Bitset& steps) {
    std::uint64_t u = 0;
    steps.for_each([&](std::size_t b) { u |= out.witness_sets[b]; });
    return u;
  };
  {
    const DownsetLattice dr = all_downsets(out.r);
    std::map<std::uint64_t, std::size_t> seen;
    for (std::size_t i = 0; i < dr.size(); ++i) {
      const std::uint64_t u = phi(dr.downsets[i]);
      if (!members.count(u))
        throw ConstructionInvariantViolated("union_map_injective", "union of witness sets leaves the semilattice");
      if (!seen.emplace(u, i).second)
        throw ConstructionInvariantViolated("union_map_injective", "two downsets have the same union");
    }
  }
  out.checks.push_back("union_map_injective");

  // rank steps by the union over their down-sets, read as a number
  std::vector<std::uint64_t> key(m);
  for (std::size_t b = 0; b < m; ++b) key[b] = phi(out.r.down(b));
  out.extension.resize(m);
  for (std::size_t b = 0; b < m; ++b) out.extension[b] = b;
  std::sort(out.extension.begin(), out.extension.end(), [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
  if (!is_linear_extension(out.r, out.extension))
    throw ConstructionInvariantViolated("omega_extension", "ranking by unions does not extend the order");
  for (std::size_t i = 0; i + 1 < m; ++i)
    if (key[out.extension[i]] == key[out.extension[i + 1]])
      throw ConstructionInvariantViolated("omega_extension", "two steps share a union");
  out.checks.push_back("omega_extension");

  std::vector<std::size_t> rank(m);
  for (std::size_t i = 0; i < m; ++i) rank[out.extension[i]] = i;
  out.s = Poset::from_relation(
      m, [&](std::size_t a, std::size_t b) { return a <= b && rank[a] <= rank[b]; }, names);
  {
    const DownsetLattice ds = all_downsets(out.s);
    for (const auto& d : ds.downsets)
      if (!out.r.is_downset(d))
        throw ConstructionInvariantViolated("downsets_inherited", "downset " + bits(d) + " of S is not a downset of R");
  }
  out.checks.push_back("downsets_inherited");
  return out;
}

}  // namespace latticelab
