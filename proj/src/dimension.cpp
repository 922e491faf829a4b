#include "latticelab/dimension.hpp"

#include <functional>

#include "latticelab/error.hpp"

namespace latticelab {

std::vector<Pair> critical_pairs(const Poset& p) {
  std::vector<Pair> out;
  const std::size_t n = p.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (p.comparable(a, b)) continue;
      Bitset below_a = p.down(a);
      below_a.reset(a);
      Bitset above_b = p.up(b);
      above_b.reset(b);
      if (below_a.subset_of(p.down(b)) && above_b.subset_of(p.up(a))) out.emplace_back(a, b);
    }
  return out;
}

namespace {

// Extension of the closed relation `up`, least available index first.
std::vector<std::size_t> extension_of(const std::vector<Bitset>& up) {
  const std::size_t n = up.size();
  std::vector<std::size_t> pending(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    up[x].for_each([&](std::size_t y) {
      if (y != x) ++pending[y];
    });
  std::vector<char> done(n, 0);
  std::vector<std::size_t> out;
  while (out.size() < n) {
    std::size_t pick = n;
    for (std::size_t x = 0; x < n && pick == n; ++x)
      if (!done[x] && pending[x] == 0) pick = x;
    done[pick] = 1;
    out.push_back(pick);
    up[pick].for_each([&](std::size_t y) {
      if (y != pick) --pending[y];
    });
  }
  return out;
}

// Force b below a; false when a is already below b.
bool reverse_into(std::vector<Bitset>& up, std::size_t a, std::size_t b) {
  if (up[a].test(b)) return false;
  const Bitset above_a = up[a];
  for (std::size_t u = 0; u < up.size(); ++u)
    if (up[u].test(b)) up[u] |= above_a;
  return true;
}

}  // namespace

bool is_realizer(const Poset& p, const Realizer& r) {
  const std::size_t n = p.size();
  std::vector<std::vector<std::size_t>> pos;
  for (const auto& e : r.extensions) {
    if (!is_linear_extension(p, e)) return false;
    std::vector<std::size_t> at(n);
    for (std::size_t i = 0; i < n; ++i) at[e[i]] = i;
    pos.push_back(std::move(at));
  }
  if (pos.empty()) return n == 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      bool all = true;
      for (const auto& at : pos) all = all && at[x] <= at[y];
      if (all != p.leq(x, y)) return false;
    }
  return true;
}

std::optional<Realizer> order_dimension(const Poset& p, std::size_t k, std::size_t max_elements) {
  if (p.size() > max_elements) throw SizeLimit("dimension search on " + std::to_string(p.size()) + " elements",
                                               max_elements);
  if (p.empty()) return Realizer{};
  if (k == 0) return std::nullopt;
  const std::vector<Pair> pairs = critical_pairs(p);
  std::vector<Bitset> base;
  for (std::size_t x = 0; x < p.size(); ++x) base.push_back(p.up(x));

  std::vector<std::vector<Bitset>> classes;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == pairs.size()) return true;
    const auto [a, b] = pairs[i];
    for (std::size_t c = 0; c < classes.size(); ++c) {
      std::vector<Bitset> saved = classes[c];
      if (reverse_into(classes[c], a, b) && rec(i + 1)) return true;
      classes[c] = std::move(saved);
    }
    if (classes.size() < k) {
      classes.push_back(base);
      if (reverse_into(classes.back(), a, b) && rec(i + 1)) return true;
      classes.pop_back();
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  if (classes.empty()) classes.push_back(base);
  Realizer out;
  for (const auto& up : classes) out.extensions.push_back(extension_of(up));
  if (!is_realizer(p, out)) throw ConstructionInvariantViolated("realizer", "extensions do not intersect to the order");
  return out;
}

DimensionResult dimension_exact(const Poset& p, std::size_t kmax, std::size_t max_elements) {
  if (p.size() > max_elements) throw SizeLimit("exact dimension on " + std::to_string(p.size()) + " elements",
                                               max_elements);
  if (p.empty()) return {0, Realizer{}};
  for (std::size_t k = 1; k <= kmax; ++k)
    if (auto r = order_dimension(p, k, max_elements)) return {k, std::move(r)};
  return {};
}

}  // namespace latticelab
