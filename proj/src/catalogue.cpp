#include "latticelab/catalogue.hpp"

#include <algorithm>
#include <map>

namespace latticelab {

namespace {

using Signature = std::vector<std::pair<std::size_t, std::size_t>>;

Signature signature(const Poset& p) {
  Signature s(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) s[x] = {p.down(x).count(), p.up(x).count()};
  std::sort(s.begin(), s.end());
  return s;
}

// Element k picks its strict down-set among the down-closed subsets of
// {0..k-1}; every naturally labelled poset appears exactly once.
void generate(std::size_t n, std::vector<Bitset>& down, const std::function<void(const std::vector<Bitset>&)>& emit) {
  const std::size_t k = down.size();
  if (k == n) {
    emit(down);
    return;
  }
  const std::uint64_t limit = std::uint64_t{1} << k;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    Bitset d = Bitset::from_mask(n, mask);
    bool closed = true;
    d.for_each([&](std::size_t e) { closed = closed && down[e].subset_of(d); });
    if (!closed) continue;
    d.set(k);
    down.push_back(d);
    generate(n, down, emit);
    down.pop_back();
  }
}

}  // namespace

std::vector<Poset> poset_catalogue(std::size_t n, const std::function<bool(const Poset&)>& keep) {
  std::vector<Poset> reps;
  std::map<Signature, std::vector<std::size_t>> buckets;
  std::vector<Bitset> down;
  generate(n, down, [&](const std::vector<Bitset>& rows) {
    Poset p = Poset::from_relation(n, [&](std::size_t i, std::size_t j) { return rows[j].test(i); });
    if (keep && !keep(p)) return;
    auto& bucket = buckets[signature(p)];
    for (std::size_t r : bucket)
      if (isomorphic(p, reps[r])) return;
    bucket.push_back(reps.size());
    reps.push_back(std::move(p));
  });
  return reps;
}

std::vector<Poset> lattice_catalogue(std::size_t n) {
  return poset_catalogue(n, [](const Poset& p) {
    // a naturally labelled lattice has 0 as bottom and n-1 as top
    if (p.size() > 0 && (p.up(0).count() != p.size() || p.down(p.size() - 1).count() != p.size())) return false;
    return std::holds_alternative<JoinTable>(as_join_semilattice(p));
  });
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t reject_from = (~std::uint64_t{0} / bound) * bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= reject_from);
  return x % bound;
}

void shuffle(std::vector<std::size_t>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_below(rng, i)]);
}

Poset random_poset(std::size_t n, std::mt19937_64& rng) {
  // density in [0.15, 0.65) in steps of 1/100
  const std::uint64_t density = 15 + uniform_below(rng, 50);
  std::vector<Bitset> up(n, Bitset(n));
  for (std::size_t i = 0; i < n; ++i) {
    up[i].set(i);
    for (std::size_t j = i + 1; j < n; ++j)
      if (uniform_below(rng, 100) < density) up[i].set(j);
  }
  close_transitively(up);
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  shuffle(perm, rng);
  return Poset::from_relation(n, [&](std::size_t i, std::size_t j) { return up[perm[i]].test(perm[j]); });
}

}  // namespace latticelab
