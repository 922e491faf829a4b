#include "latticelab/constructions.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "latticelab/catalogue.hpp"
#include "latticelab/error.hpp"

namespace latticelab {

PhiStrategy parse_phi(std::string_view name) {
  if (name == "identity") return PhiStrategy::Identity;
  if (name == "reverse") return PhiStrategy::Reverse;
  if (name == "diagonal") return PhiStrategy::Diagonal;
  if (name == "seeded-random" || name == "random") return PhiStrategy::SeededRandom;
  throw InvalidOrder("unknown phi strategy '" + std::string(name) + "'");
}

const char* to_string(PhiStrategy s) {
  switch (s) {
    case PhiStrategy::Identity: return "identity";
    case PhiStrategy::Reverse: return "reverse";
    case PhiStrategy::Diagonal: return "diagonal";
    case PhiStrategy::SeededRandom: return "seeded-random";
  }
  return "";
}

std::vector<std::size_t> resolve_phi(const SierpinskisationSpec& spec, const TruncatedChain& t) {
  const std::size_t m = t.size();
  if (!spec.phi.empty()) {
    if (spec.phi.size() != m) throw InvalidOrder("phi has the wrong length for this stage");
    std::vector<char> hit(m, 0);
    for (std::size_t v : spec.phi) {
      if (v >= m || hit[v]) throw InvalidOrder("phi is not a permutation");
      hit[v] = 1;
    }
    return spec.phi;
  }
  std::vector<std::size_t> phi(m);
  switch (spec.strategy) {
    case PhiStrategy::Identity:
    case PhiStrategy::Diagonal: phi = t.position_of; break;
    case PhiStrategy::Reverse:
      for (std::size_t x = 0; x < m; ++x) phi[x] = t.position_of[m - 1 - x];
      break;
    case PhiStrategy::SeededRandom: {
      std::iota(phi.begin(), phi.end(), 0);
      std::mt19937_64 rng(spec.seed);
      shuffle(phi, rng);
      break;
    }
  }
  return phi;
}

Poset sierpinskisation(const TruncatedChain& t, std::span<const std::size_t> phi) {
  const std::size_t m = t.size();
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < m; ++x) labels.push_back(label_to_string(t.labels[phi[x]]));
  return Poset::from_relation(
      m, [&](std::size_t x, std::size_t y) { return x <= y && phi[x] <= phi[y]; }, std::move(labels));
}

Poset sierpinskisation(const SierpinskisationSpec& spec) {
  const TruncatedChain t = truncate(spec.alpha, spec.stage);
  const auto phi = resolve_phi(spec, t);
  return sierpinskisation(t, phi);
}

Poset monotonic_sierp(const OrderType& a, std::size_t stage) {
  const TruncatedChain t = truncate(OrderType::omega_dot(a), stage);
  // within each column the enumeration must climb the column
  const auto grid = grid_enumeration(a, stage);
  std::map<std::size_t, std::size_t> next_row;
  for (const auto& g : grid) {
    if (g.row != next_row[g.column_rank])
      throw ConstructionInvariantViolated("column_monotone", "column " + std::to_string(g.column_rank) +
                                                                 " enumerated out of order");
    ++next_row[g.column_rank];
  }
  return sierpinskisation(t, t.position_of);
}

Poset lattice_sierp(const OrderType& a, std::size_t stage) {
  const auto grid = grid_enumeration(a, stage);
  const auto columns = enumerate(a, stage);
  // column rank -> position of the column in the chain of type a
  std::vector<std::size_t> by_label(columns.size());
  std::iota(by_label.begin(), by_label.end(), 0);
  std::sort(by_label.begin(), by_label.end(), [&](std::size_t x, std::size_t y) { return columns[x] < columns[y]; });
  std::vector<std::size_t> column_pos(columns.size());
  for (std::size_t p = 0; p < by_label.size(); ++p) column_pos[by_label[p]] = p;

  // a column-monotone sierpinskisation is the product order on
  // (enumeration index, column)
  std::set<std::pair<std::size_t, std::size_t>> points;
  for (std::size_t k = 0; k < grid.size(); ++k) points.emplace(k, column_pos[grid[k].column_rank]);
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<std::pair<std::size_t, std::size_t>> snapshot(points.begin(), points.end());
    for (std::size_t i = 0; i < snapshot.size(); ++i)
      for (std::size_t j = i + 1; j < snapshot.size(); ++j) {
        std::pair<std::size_t, std::size_t> z{std::max(snapshot[i].first, snapshot[j].first),
                                              std::max(snapshot[i].second, snapshot[j].second)};
        grew = points.insert(z).second || grew;
      }
  }
  const std::vector<std::pair<std::size_t, std::size_t>> pts(points.begin(), points.end());
  std::vector<std::string> labels;
  for (const auto& [k, c] : pts) labels.push_back(std::to_string(k) + ":" + label_to_string(columns[by_label[c]]));
  return Poset::from_relation(
      pts.size(),
      [&](std::size_t x, std::size_t y) { return pts[x].first <= pts[y].first && pts[x].second <= pts[y].second; },
      std::move(labels));
}

Poset bottomed_lattice_sierp(const OrderType& a, std::size_t stage) {
  Poset l = lattice_sierp(a, stage);
  return has_first_element(a) ? underline(l) : add_bottom(l);
}

Poset figure1(std::size_t n) {
  if (n < 2) throw InvalidOrder("figure1 needs n >= 2");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<std::string> labels{"bot"};
  for (const auto& [i, j] : pairs) labels.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");
  return Poset::from_relation(
      pairs.size() + 1,
      [&](std::size_t x, std::size_t y) {
        if (x == 0) return true;
        if (y == 0) return false;
        const auto& [i, j] = pairs[x - 1];
        const auto& [i2, j2] = pairs[y - 1];
        return i2 <= i && j <= j2;
      },
      std::move(labels));
}

Poset figure2(std::size_t n) {
  if (n < 1) throw InvalidOrder("figure2 needs n >= 1");
  return bottomed_lattice_sierp(OrderType::eta(), n);
}

Poset powerset_semilattice(std::size_t k, std::size_t max_elements) {
  if (k >= 63 || (std::size_t{1} << k) > max_elements)
    throw SizeLimit("powerset of " + std::to_string(k) + " points is too large", max_elements);
  const std::size_t n = std::size_t{1} << k;
  std::vector<std::string> labels;
  for (std::size_t m = 0; m < n; ++m) {
    std::string s = "{";
    for (std::size_t b = 0; b < k; ++b)
      if (m >> b & 1U) s += (s.size() > 1 ? "," : "") + std::to_string(b);
    labels.push_back(s + "}");
  }
  return Poset::from_relation(
      n, [](std::size_t x, std::size_t y) { return (x & ~y) == 0; }, std::move(labels));
}

namespace {

Poset labelled_chain(std::size_t n, const std::string& prefix) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
  return chain(n).with_labels(std::move(labels));
}

}  // namespace

Poset build_S_alpha(const OrderType& a, std::size_t stage) {
  const auto split = decompose_omega(a);
  if (std::holds_alternative<FiniteCase>(split)) return truncate(a, stage).chain;
  const auto& [multiplier, n] = std::get<OmegaSplit>(split);
  return direct_sum(monotonic_sierp(multiplier, stage), labelled_chain(n, "tail:"));
}

Poset build_P_alpha(const OrderType& a, std::size_t stage) {
  const PCase c = classify_for_p(a);
  switch (c.tag) {
    case PCase::Tag::FirstBlocked: {
      Poset top = bottomed_lattice_sierp(c.rest, stage);
      if (c.n == 0) return top;
      const std::vector<Poset> parts{labelled_chain(c.n, "head:"), std::move(top)};
      return lex_sum(chain(2), parts);
    }
    case PCase::Tag::OmegaHead:
      return bottomed_lattice_sierp(OrderType::sum({OrderType::fin(1), c.rest}), stage);
    case PCase::Tag::Plain: return bottomed_lattice_sierp(a, stage);
  }
  return {};
}

DownsetLattice build_Q_alpha(const OrderType& a, std::size_t stage, std::size_t max_downsets) {
  return fin_gen_downsets(build_S_alpha(a, stage), max_downsets);
}

}  // namespace latticelab
