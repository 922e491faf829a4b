#include "latticelab/probes.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "latticelab/catalogue.hpp"
#include "latticelab/error.hpp"
#include "latticelab/ideals.hpp"
#include "latticelab/parallel.hpp"

namespace latticelab {

namespace {

std::optional<std::vector<std::size_t>> match_labels(const Poset& lower, const Poset& upper) {
  if (!lower.has_labels() || !upper.has_labels()) return std::nullopt;
  std::unordered_map<std::string, std::size_t> at;
  for (std::size_t y = 0; y < upper.size(); ++y)
    if (!at.emplace(upper.labels()[y], y).second) return std::nullopt;
  std::vector<std::size_t> map;
  for (const auto& l : lower.labels()) {
    auto it = at.find(l);
    if (it == at.end()) return std::nullopt;
    map.push_back(it->second);
  }
  return map;
}

std::vector<std::uint64_t> downset_masks(const DownsetLattice& l) {
  if (l.base.size() > 64) throw SizeLimit("set representation over more than 64 points", 64);
  std::vector<std::uint64_t> out;
  for (const auto& d : l.downsets) out.push_back(d.mask());
  return out;
}

bool verify_set_representation(const Poset& q, const std::vector<std::uint64_t>& masks) {
  const std::size_t n = q.size();
  if (masks.size() != n) return false;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const bool sub = (masks[x] & ~masks[y]) == 0;
      if (sub != q.leq(x, y)) return false;
    }
  if (n == 0) return true;
  const JoinSemilattice s = JoinSemilattice::from(q);
  if (!s.bottom() || masks[*s.bottom()] != 0) return false;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      if (masks[s.join(x, y)] != (masks[x] | masks[y])) return false;
  return true;
}

std::size_t ground_of(const std::vector<std::uint64_t>& masks) {
  std::uint64_t all = 0;
  for (auto m : masks) all |= m;
  return static_cast<std::size_t>(64 - std::countl_zero(all));
}

std::vector<std::size_t> stage_range(const TruncationFamily& f, std::size_t count) {
  std::vector<std::size_t> s(count);
  for (std::size_t i = 0; i < count; ++i) s[i] = f.first_stage + i;
  return s;
}

std::vector<Poset> build_stages(const TruncationFamily& f, const std::vector<std::size_t>& stages) {
  std::vector<Poset> out(stages.size());
  parallel_for(stages.size(), [&](std::size_t i) { out[i] = f.stage(stages[i]); });
  return out;
}

}  // namespace

std::vector<std::size_t> stage_inclusion(const TruncationFamily& f, const Poset& lower, const Poset& upper) {
  if (auto m = match_labels(lower, upper); m && verify_embedding(lower, upper, *m, f.mode)) return *m;
  if (auto w = find_embedding(lower, upper, f.mode)) return w->map;
  throw ConstructionInvariantViolated("stage_inclusion", "a stage of " + f.name + " does not embed in the next");
}

TruncationFamily powerset_family(std::size_t max_elements) {
  TruncationFamily f;
  f.name = "powerset";
  f.first_stage = 0;
  f.mode = EmbedMode::JoinBottom;
  f.generator = [max_elements](std::size_t s) { return powerset_semilattice(s, max_elements); };
  f.set_representation = [](std::size_t s) {
    std::vector<std::uint64_t> m(std::size_t{1} << s);
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = i;
    return m;
  };
  return f;
}

TruncationFamily figure1_family() {
  TruncationFamily f;
  f.name = "figure1";
  f.first_stage = 2;
  f.mode = EmbedMode::JoinBottom;
  f.generator = [](std::size_t s) { return figure1(s); };
  return f;
}

TruncationFamily figure2_family() {
  TruncationFamily f;
  f.name = "figure2";
  f.mode = EmbedMode::JoinBottom;
  f.generator = [](std::size_t s) { return figure2(s); };
  return f;
}

TruncationFamily chain_family(const OrderType& a) {
  TruncationFamily f;
  f.name = "chain:" + a.to_string();
  f.mode = EmbedMode::JoinBottom;
  f.generator = [a](std::size_t s) { return truncate(a, s).chain; };
  f.set_representation = [a](std::size_t s) {
    const std::size_t m = truncate(a, s).size();
    if (m > 64) throw SizeLimit("set representation over more than 64 points", 64);
    std::vector<std::uint64_t> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = (std::uint64_t{1} << i) - 1;
    return out;
  };
  return f;
}

TruncationFamily sierp_family(const OrderType& a, PhiStrategy strategy, std::uint64_t seed) {
  TruncationFamily f;
  f.name = "sierp:" + a.to_string() + ":" + to_string(strategy);
  f.generator = [a, strategy, seed](std::size_t s) {
    SierpinskisationSpec spec;
    spec.alpha = a;
    spec.stage = s;
    spec.strategy = strategy;
    spec.seed = seed;
    return sierpinskisation(spec);
  };
  return f;
}

TruncationFamily mono_sierp_family(const OrderType& a) {
  TruncationFamily f;
  f.name = "mono-sierp:" + a.to_string();
  f.generator = [a](std::size_t s) { return monotonic_sierp(a, s); };
  return f;
}

TruncationFamily lattice_sierp_family(const OrderType& a) {
  TruncationFamily f;
  f.name = "lattice-sierp:" + a.to_string();
  f.generator = [a](std::size_t s) { return lattice_sierp(a, s); };
  return f;
}

TruncationFamily p_alpha_family(const OrderType& a) {
  TruncationFamily f;
  f.name = "P:" + a.to_string();
  f.mode = EmbedMode::JoinBottom;
  f.generator = [a](std::size_t s) { return build_P_alpha(a, s); };
  return f;
}

TruncationFamily q_alpha_family(const OrderType& a) {
  TruncationFamily f;
  f.name = "Q:" + a.to_string();
  f.mode = EmbedMode::JoinBottom;
  f.generator = [a](std::size_t s) { return build_Q_alpha(a, s).order(DownsetLabels::Members); };
  f.set_representation = [a](std::size_t s) { return downset_masks(build_Q_alpha(a, s)); };
  return f;
}

TruncationFamily fingen_family(const TruncationFamily& base) {
  TruncationFamily f;
  f.name = "fingen:" + base.name;
  f.first_stage = base.first_stage;
  f.mode = EmbedMode::JoinBottom;
  auto gen = base.generator;
  f.generator = [gen](std::size_t s) { return fin_gen_downsets(gen(s)).order(DownsetLabels::Members); };
  f.set_representation = [gen](std::size_t s) { return downset_masks(fin_gen_downsets(gen(s))); };
  return f;
}

std::vector<TruncationFamily> obstruction_set(const OrderType& a) {
  return {chain_family(a), p_alpha_family(a), q_alpha_family(a), powerset_family(), figure1_family()};
}

namespace {

std::string trend(const std::vector<std::size_t>& v) {
  if (v.size() < 3) return "inconclusive";
  const std::size_t a = v[v.size() - 3], b = v[v.size() - 2], c = v[v.size() - 1];
  if (a < b && b < c) return "growth";
  if (a == b && b == c) return "plateau";
  return "inconclusive";
}

}  // namespace

WidthProfile width_growth(const TruncationFamily& f, std::size_t count) {
  WidthProfile out;
  out.family = f.name;
  out.stages = stage_range(f, count);
  const auto posets = build_stages(f, out.stages);
  out.widths.resize(count);
  parallel_for(count, [&](std::size_t i) { out.widths[i] = width(posets[i]); });
  for (std::size_t i = 1; i < count; ++i)
    if (out.widths[i] < out.widths[i - 1])
      throw ConstructionInvariantViolated("width_monotone", f.name + " loses width at stage " +
                                                                std::to_string(out.stages[i]));
  out.verdict = trend(out.widths);
  return out;
}

ObstructionReport obstruction_scan(const JoinSemilattice& p, const std::vector<TruncationFamily>& families,
                                   std::size_t budget) {
  if (!p.bottom()) throw PreconditionFailed("the scanned semilattice needs a least element");
  ObstructionReport report;
  report.budget = budget;
  for (const auto& f : families) {
    ScanEntry e;
    e.family = f.name;
    e.stages = stage_range(f, budget);
    const auto posets = build_stages(f, e.stages);
    std::vector<std::optional<EmbeddingWitness>> found(budget);
    for (std::size_t i = 0; i < budget; ++i) found[i] = find_embedding(posets[i], p.order, f.mode);
    for (std::size_t i = 0; i < budget; ++i) {
      e.embeds.push_back(found[i].has_value());
      if (!found[i] || i == 0) continue;
      if (!found[i - 1])
        throw ConstructionInvariantViolated("scan_monotone", f.name + " stage " + std::to_string(e.stages[i]) +
                                                                 " embeds but the stage below does not");
      const auto inc = stage_inclusion(f, posets[i - 1], posets[i]);
      std::vector<std::size_t> composed(inc.size());
      for (std::size_t x = 0; x < inc.size(); ++x) composed[x] = found[i]->map[inc[x]];
      if (!verify_embedding(posets[i - 1], p.order, composed, f.mode))
        throw ConstructionInvariantViolated("scan_monotone", "composed inclusion fails for " + f.name);
    }
    for (std::size_t i = budget; i-- > 0;)
      if (found[i]) {
        e.max_stage = e.stages[i];
        e.witness = std::move(found[i]);
        break;
      }
    report.entries.push_back(std::move(e));
  }
  return report;
}

std::size_t powerset_max(const Poset& p) {
  std::size_t k = 0;
  while (k + 1 < 63 && (std::size_t{1} << (k + 1)) <= p.size() &&
         find_embedding(powerset_semilattice(k + 1, p.size()), p, EmbedMode::JoinBottom))
    ++k;
  return k;
}

DichotomyReport dichotomy_probe(const TruncationFamily& f, std::size_t count) {
  DichotomyReport out;
  out.family = f.name;
  out.stages = stage_range(f, count);
  const auto posets = build_stages(f, out.stages);
  std::vector<std::size_t> grounds(count);
  out.widths.resize(count);
  out.powerset_max.resize(count);
  parallel_for(count, [&](std::size_t i) {
    if (f.set_representation) {
      const auto masks = f.set_representation(out.stages[i]);
      if (!verify_set_representation(posets[i], masks))
        throw PreconditionFailed("stage " + std::to_string(out.stages[i]) + " of " + f.name +
                                 " is not a finite-join subsemilattice of its powerset");
      grounds[i] = ground_of(masks);
    } else {
      grounds[i] = powerset_representation(JoinSemilattice::from(posets[i])).first;
    }
    out.widths[i] = width(posets[i]);
    out.powerset_max[i] = powerset_max(posets[i]);
  });
  out.representation_ground = grounds.empty() ? 0 : *std::max_element(grounds.begin(), grounds.end());
  const std::string t = trend(out.powerset_max);
  out.verdict = t == "growth" ? "powerset-horn" : t == "plateau" ? "wqo-horn" : "inconclusive";
  return out;
}

// ------------------------------------------------------------- shadows

std::vector<std::size_t> admissible_random_phi(const OrderType& a, std::size_t stage, std::mt19937_64& rng) {
  const TruncatedChain t = truncate(OrderType::omega_dot(a), stage);
  const auto grid = grid_enumeration(a, stage);
  std::map<std::size_t, std::vector<std::size_t>> columns;  // rank -> enumeration indices, rows ascending
  for (std::size_t k = 0; k < grid.size(); ++k) columns[grid[k].column_rank].push_back(k);
  std::map<std::size_t, std::size_t> taken;
  std::vector<std::size_t> phi;
  while (phi.size() < grid.size()) {
    std::vector<std::size_t> open;
    for (const auto& [rank, ks] : columns)
      if (taken[rank] < ks.size()) open.push_back(rank);
    shuffle(open, rng);
    for (std::size_t rank : open) phi.push_back(t.position_of[columns[rank][taken[rank]++]]);
  }
  return phi;
}

std::optional<TailSplit> tail_split(const Poset& p, std::size_t n, std::size_t min_width) {
  const std::size_t size = p.size();
  std::vector<std::size_t> head;
  std::optional<TailSplit> out;
  std::function<bool(std::size_t)> rec = [&](std::size_t start) -> bool {
    if (head.size() == n) {
      std::vector<std::size_t> rest;
      for (std::size_t y = head.empty() ? 0 : head.back() + 1; y < size; ++y) {
        bool free = true;
        for (std::size_t x : head) free = free && !p.comparable(x, y);
        if (free) rest.push_back(y);
      }
      if (width(p.induced(rest)) < min_width) return false;
      out = TailSplit{head, rest};
      return true;
    }
    for (std::size_t x = start; x < size; ++x) {
      if (!head.empty() && !p.lt(head.back(), x)) continue;
      head.push_back(x);
      if (rec(x + 1)) return true;
      head.pop_back();
    }
    return false;
  };
  rec(0);
  return out;
}

}  // namespace latticelab
