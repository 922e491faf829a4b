#include "latticelab/ideals.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <unordered_set>

#include "latticelab/error.hpp"

namespace latticelab {

const char* to_string(DownsetKind kind) {
  switch (kind) {
    case DownsetKind::All: return "all";
    case DownsetKind::Ideals: return "ideals";
    case DownsetKind::FinGen: return "fingen";
  }
  return "";
}

std::optional<std::size_t> DownsetLattice::index_of(const Bitset& s) const {
  auto it = std::lower_bound(downsets.begin(), downsets.end(), s);
  if (it == downsets.end() || !(*it == s)) return std::nullopt;
  return static_cast<std::size_t>(it - downsets.begin());
}

Poset DownsetLattice::order(DownsetLabels style) const {
  std::vector<std::string> labels;
  labels.reserve(downsets.size());
  for (const auto& d : downsets) {
    if (style == DownsetLabels::Bits) {
      labels.push_back(d.to_string());
      continue;
    }
    std::string s = "{";
    bool first = true;
    d.for_each([&](std::size_t x) {
      if (!first) s += ",";
      first = false;
      s += base.name(x);
    });
    labels.push_back(s + "}");
  }
  const std::size_t n = downsets.size();
  std::vector<Bitset> up(n, Bitset(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)  // sorted order: a subset never comes later
      if (downsets[i].subset_of(downsets[j])) up[i].set(j);
  return Poset::from_up_rows(std::move(up), std::move(labels));
}

namespace {

// x < y implies |down(x)| < |down(y)|
std::vector<std::size_t> by_down_count(const Poset& p) {
  std::vector<std::size_t> order(p.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return p.down(a).count() < p.down(b).count(); });
  return order;
}

void check_bound(std::size_t count, std::size_t max_downsets) {
  if (count > max_downsets) throw SizeLimit("too many downsets", max_downsets);
}

// Include/exclude over a linear extension.  Excluding x excludes everything
// above it, so every leaf is a downset.  With `directed_only`, a branch is cut
// once the included set has no upper bound outside the excluded set: every
// finite non-empty directed set has an upper bound inside itself.
std::vector<Bitset> search_downsets(const Poset& p, bool directed_only, std::size_t max_downsets) {
  const std::size_t n = p.size();
  const auto order = by_down_count(p);
  std::vector<Bitset> out;
  std::function<void(std::size_t, const Bitset&, const Bitset&, const Bitset&)> rec =
      [&](std::size_t k, const Bitset& in, const Bitset& excluded, const Bitset& bounds) {
        while (k < n && excluded.test(order[k])) ++k;
        if (k == n) {
          if (directed_only && (in.none() || !is_directed(p, in))) return;
          out.push_back(in);
          check_bound(out.size(), max_downsets);
          return;
        }
        const std::size_t x = order[k];
        {
          Bitset with = in;
          with.set(x);
          Bitset b = bounds & p.up(x);
          if (!directed_only || (b - excluded).any()) rec(k + 1, with, excluded, b);
        }
        {
          const Bitset ex = excluded | p.up(x);
          if (!directed_only || in.none() || (bounds - ex).any()) rec(k + 1, in, ex, bounds);
        }
      };
  rec(0, Bitset(n), Bitset(n), Bitset::full(n));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool is_directed(const Poset& p, const Bitset& s) {
  const auto members = s.members();
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (!(p.up(members[i]) & p.up(members[j])).intersects(s)) return false;
  return true;
}

DownsetLattice all_downsets(const Poset& p, std::size_t max_downsets) {
  return DownsetLattice{p, search_downsets(p, false, max_downsets), DownsetKind::All, true};
}

DownsetLattice ideals_of(const Poset& p, std::size_t max_downsets) {
  return DownsetLattice{p, search_downsets(p, true, max_downsets), DownsetKind::Ideals, true};
}

DownsetLattice fin_gen_downsets(const Poset& p, std::size_t max_downsets, bool principal_finite) {
  const std::size_t n = p.size();
  std::unordered_set<Bitset, BitsetHash> seen;
  std::vector<Bitset> frontier{Bitset(n)};
  seen.insert(frontier.front());
  while (!frontier.empty()) {
    std::vector<Bitset> next;
    for (const auto& s : frontier) {
      for (std::size_t x = 0; x < n; ++x) {
        if (s.test(x)) continue;
        Bitset t = s | p.down(x);
        if (seen.insert(t).second) {
          check_bound(seen.size(), max_downsets);
          next.push_back(std::move(t));
        }
      }
    }
    frontier = std::move(next);
  }
  std::vector<Bitset> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return DownsetLattice{p, std::move(out), DownsetKind::FinGen, principal_finite};
}

Bitset generated_ideal(const JoinSemilattice& l, const Bitset& a) {
  if (!l.bottom()) throw PreconditionFailed("generated ideal needs a least element");
  // joins of finite subsets of A; the empty subset contributes the bottom
  Bitset joins = a;
  joins.set(*l.bottom());
  for (bool grew = true; grew;) {
    grew = false;
    const auto members = joins.members();
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        const std::size_t z = l.join(members[i], members[j]);
        if (!joins.test(z)) {
          joins.set(z);
          grew = true;
        }
      }
    }
  }
  return l.order.down_closure(joins);
}

Bitset compact_elements(const Poset& l) {
  if (l.empty()) throw NotLattice("the empty poset is not a lattice");
  auto joins = as_join_semilattice(l);
  if (std::holds_alternative<JoinFailure>(joins) || !l.has_bottom()) throw NotLattice("poset is not a lattice");
  const auto& table = std::get<JoinTable>(joins);
  const DownsetLattice ideals = ideals_of(l);
  Bitset out = l.all();
  for (const auto& ideal : ideals.downsets) {
    const std::size_t top = *table.join_all(ideal);
    l.down(top).for_each([&](std::size_t k) {
      if (!ideal.test(k)) out.reset(k);
    });
  }
  return out;
}

MaximalChains maximal_chains(const DownsetLattice& l, std::size_t limit) {
  const std::size_t n = l.size();
  std::vector<std::vector<std::size_t>> covers(n);
  std::vector<char> has_lower(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> above;
    for (std::size_t j = i + 1; j < n; ++j)
      if (l.downsets[i].subset_of(l.downsets[j])) above.push_back(j);
    for (std::size_t j : above) {
      bool cover = true;
      for (std::size_t k : above)
        if (k != j && k < j && l.downsets[k].subset_of(l.downsets[j])) {
          cover = false;
          break;
        }
      if (cover) {
        covers[i].push_back(j);
        has_lower[j] = 1;
      }
    }
  }

  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> paths(n, 0);
  for (std::size_t i = n; i-- > 0;) {
    if (covers[i].empty()) {
      paths[i] = 1;
      continue;
    }
    for (std::size_t j : covers[i]) paths[i] = paths[i] > kMax - paths[j] ? kMax : paths[i] + paths[j];
  }

  MaximalChains out;
  for (std::size_t i = 0; i < n; ++i)
    if (!has_lower[i]) out.total = out.total > kMax - paths[i] ? kMax : out.total + paths[i];

  std::vector<std::size_t> current;
  std::function<bool(std::size_t)> walk = [&](std::size_t i) -> bool {
    current.push_back(i);
    bool go_on = true;
    if (covers[i].empty()) {
      if (out.chains.size() == limit) {
        out.complete = false;
        go_on = false;
      } else {
        out.chains.push_back(current);
      }
    } else {
      for (std::size_t j : covers[i])
        if (!(go_on = walk(j))) break;
    }
    current.pop_back();
    return go_on;
  };
  for (std::size_t i = 0; i < n; ++i)
    if (!has_lower[i] && !walk(i)) break;
  return out;
}

}  // namespace latticelab
