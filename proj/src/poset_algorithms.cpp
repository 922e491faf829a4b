#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "latticelab/poset.hpp"

namespace latticelab {

namespace {

// x < y implies |down(x)| < |down(y)|, so this order is a linear extension.
std::vector<std::size_t> topological(const Poset& p) {
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return p.down(a).count() < p.down(b).count(); });
  return order;
}

std::size_t longest_chain_in(const Poset& p, const std::vector<std::size_t>& topo, const Bitset& pool) {
  std::vector<std::size_t> len(p.size(), 0);
  std::size_t best = 0;
  for (std::size_t x : topo) {
    if (!pool.test(x)) continue;
    std::size_t l = 0;
    const Bitset below = (p.down(x) & pool);
    below.for_each([&](std::size_t z) {
      if (z != x) l = std::max(l, len[z]);
    });
    len[x] = l + 1;
    best = std::max(best, len[x]);
  }
  return best;
}

// Dilworth: width = |pool| - maximum matching of the strict order as a
// bipartite graph.
std::size_t largest_antichain_in(const Poset& p, const Bitset& pool) {
  const std::size_t n = p.size();
  const std::vector<std::size_t> members = pool.members();
  std::vector<std::size_t> match_right(n, n);
  std::vector<char> seen(n);
  std::function<bool(std::size_t)> augment = [&](std::size_t x) -> bool {
    const Bitset targets = p.up(x) & pool;
    for (std::size_t y = targets.first(); y < n; y = targets.next(y + 1)) {
      if (y == x || seen[y]) continue;
      seen[y] = 1;
      if (match_right[y] == n || augment(match_right[y])) {
        match_right[y] = x;
        return true;
      }
    }
    return false;
  };
  std::size_t matching = 0;
  for (std::size_t x : members) {
    std::fill(seen.begin(), seen.end(), 0);
    if (augment(x)) ++matching;
  }
  return members.size() - matching;
}

}  // namespace

std::size_t height(const Poset& p) { return longest_chain_in(p, topological(p), p.all()); }

std::size_t width(const Poset& p) { return largest_antichain_in(p, p.all()); }

HeightWidth height_width(const Poset& p) {
  HeightWidth out;
  const std::size_t n = p.size();
  const auto topo = topological(p);
  out.height = longest_chain_in(p, topo, p.all());
  out.width = largest_antichain_in(p, p.all());

  // Greedy by index: keep e when some optimal witness agrees with every
  // decision made so far and contains e.
  Bitset chosen(n);
  for (std::size_t e = 0; e < n && chosen.count() < out.height; ++e) {
    bool ok = true;
    chosen.for_each([&](std::size_t c) { ok = ok && p.comparable(c, e); });
    if (!ok) continue;
    Bitset pool(n);
    for (std::size_t z = e + 1; z < n; ++z) {
      bool fits = p.comparable(z, e);
      chosen.for_each([&](std::size_t c) { fits = fits && p.comparable(c, z); });
      if (fits) pool.set(z);
    }
    if (chosen.count() + 1 + longest_chain_in(p, topo, pool) == out.height) chosen.set(e);
  }
  out.longest_chain = chosen.members();

  chosen.clear();
  for (std::size_t e = 0; e < n && chosen.count() < out.width; ++e) {
    bool ok = true;
    chosen.for_each([&](std::size_t c) { ok = ok && !p.comparable(c, e); });
    if (!ok) continue;
    Bitset pool(n);
    for (std::size_t z = e + 1; z < n; ++z) {
      bool fits = !p.comparable(z, e);
      chosen.for_each([&](std::size_t c) { fits = fits && !p.comparable(c, z); });
      if (fits) pool.set(z);
    }
    if (chosen.count() + 1 + largest_antichain_in(p, pool) == out.width) chosen.set(e);
  }
  out.largest_antichain = chosen.members();
  return out;
}

LinearExtensions linear_extensions(const Poset& p, std::size_t limit) {
  LinearExtensions out;
  const std::size_t n = p.size();
  std::vector<std::size_t> current;
  Bitset placed(n);
  std::function<bool()> rec = [&]() -> bool {
    if (current.size() == n) {
      if (out.extensions.size() == limit) {
        out.complete = false;
        return false;
      }
      out.extensions.push_back(current);
      return true;
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (placed.test(x)) continue;
      if (!(p.down(x) - placed).subset_of(Bitset(n, {x}))) continue;
      placed.set(x);
      current.push_back(x);
      const bool go_on = rec();
      current.pop_back();
      placed.reset(x);
      if (!go_on) return false;
    }
    return true;
  };
  if (limit > 0) rec();
  return out;
}

bool is_linear_extension(const Poset& p, std::span<const std::size_t> order) {
  const std::size_t n = p.size();
  if (order.size() != n) return false;
  std::vector<std::size_t> pos(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (order[i] >= n || pos[order[i]] != n) return false;
    pos[order[i]] = i;
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (p.lt(x, y) && pos[x] > pos[y]) return false;
  return true;
}

std::vector<std::size_t> first_linear_extension(const Poset& p) {
  const std::size_t n = p.size();
  std::vector<std::size_t> out;
  Bitset placed(n);
  while (out.size() < n) {
    for (std::size_t x = 0; x < n; ++x) {
      if (!placed.test(x) && (p.down(x) - placed).count() == 1) {
        placed.set(x);
        out.push_back(x);
        break;
      }
    }
  }
  return out;
}

namespace {

// Colour refinement over up- and down-neighbourhoods.  Both posets share one
// palette, so equal colours are a necessary condition for mapping.
void refine_colours(const Poset& p, const Poset& q, std::vector<std::size_t>& cp, std::vector<std::size_t>& cq) {
  auto initial = [](const Poset& r) {
    std::vector<std::pair<std::size_t, std::size_t>> keys(r.size());
    for (std::size_t x = 0; x < r.size(); ++x) keys[x] = {r.down(x).count(), r.up(x).count()};
    return keys;
  };
  std::map<std::vector<std::size_t>, std::size_t> palette;
  auto colour_of = [&](std::vector<std::size_t> key) {
    auto [it, inserted] = palette.try_emplace(std::move(key), palette.size());
    return it->second;
  };
  const auto kp = initial(p), kq = initial(q);
  cp.resize(p.size());
  cq.resize(q.size());
  for (std::size_t x = 0; x < p.size(); ++x) cp[x] = colour_of({kp[x].first, kp[x].second});
  for (std::size_t x = 0; x < q.size(); ++x) cq[x] = colour_of({kq[x].first, kq[x].second});

  for (std::size_t round = 0; round < 4; ++round) {
    std::map<std::vector<std::size_t>, std::size_t> next_palette;
    auto step = [&](const Poset& r, const std::vector<std::size_t>& c) {
      std::vector<std::size_t> out(r.size());
      for (std::size_t x = 0; x < r.size(); ++x) {
        std::vector<std::size_t> ups, downs;
        r.up(x).for_each([&](std::size_t y) { ups.push_back(c[y]); });
        r.down(x).for_each([&](std::size_t y) { downs.push_back(c[y]); });
        std::sort(ups.begin(), ups.end());
        std::sort(downs.begin(), downs.end());
        std::vector<std::size_t> key{c[x], ups.size()};
        key.insert(key.end(), ups.begin(), ups.end());
        key.insert(key.end(), downs.begin(), downs.end());
        auto [it, inserted] = next_palette.try_emplace(std::move(key), next_palette.size());
        out[x] = it->second;
      }
      return out;
    };
    cp = step(p, cp);
    cq = step(q, cq);
  }
}

}  // namespace

std::optional<std::vector<std::size_t>> isomorphic(const Poset& p, const Poset& q) {
  const std::size_t n = p.size();
  if (q.size() != n) return std::nullopt;
  std::vector<std::size_t> cp, cq;
  refine_colours(p, q, cp, cq);
  {
    auto a = cp, b = cq;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }
  std::vector<std::size_t> map(n, n);
  std::vector<char> used(n, 0);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == n) return true;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || cp[i] != cq[j]) continue;
      bool ok = true;
      for (std::size_t a = 0; a < i && ok; ++a)
        ok = p.leq(a, i) == q.leq(map[a], j) && p.leq(i, a) == q.leq(j, map[a]);
      if (!ok) continue;
      map[i] = j;
      used[j] = 1;
      if (rec(i + 1)) return true;
      used[j] = 0;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return map;
}

}  // namespace latticelab
