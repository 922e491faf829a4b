#include "latticelab/poset.hpp"

#include <algorithm>

#include "latticelab/error.hpp"

namespace latticelab {

namespace {

std::vector<Bitset> transpose(const std::vector<Bitset>& rows) {
  const std::size_t n = rows.size();
  std::vector<Bitset> out(n, Bitset(n));
  for (std::size_t i = 0; i < n; ++i) rows[i].for_each([&](std::size_t j) { out[j].set(i); });
  return out;
}

}  // namespace

bool close_transitively(std::vector<Bitset>& up) {
  const std::size_t n = up.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (i != k && up[i].test(k)) up[i] |= up[k];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = up[i].next(i + 1); j < n; j = up[i].next(j + 1))
      if (up[j].test(i)) return false;
  return true;
}

Poset::Poset(std::vector<Bitset> up, std::vector<std::string> labels)
    : up_(std::move(up)), labels_(std::move(labels)) {
  down_ = transpose(up_);
}

Poset Poset::from_covers(std::size_t size, std::span<const Pair> covers, std::vector<std::string> labels) {
  std::vector<Bitset> up(size, Bitset(size));
  for (std::size_t i = 0; i < size; ++i) up[i].set(i);
  for (const auto& [lo, hi] : covers) {
    if (lo >= size || hi >= size)
      throw InvalidOrder("cover (" + std::to_string(lo) + "," + std::to_string(hi) + ") out of range for size " +
                         std::to_string(size));
    up[lo].set(hi);
  }
  if (!close_transitively(up)) throw CycleError("cover relation contains a directed cycle");
  if (!labels.empty() && labels.size() != size) throw InvalidOrder("label count does not match size");
  return Poset(std::move(up), std::move(labels));
}

Poset Poset::from_up_rows(std::vector<Bitset> up, std::vector<std::string> labels) {
  Poset p(std::move(up), std::move(labels));
  p.check_axioms();
  return p;
}

void Poset::check_axioms() const {
  const std::size_t n = size();
  if (!labels_.empty() && labels_.size() != n) throw InvalidOrder("label count does not match size");
  for (std::size_t i = 0; i < n; ++i) {
    if (up_[i].size() != n) throw InvalidOrder("row width does not match size");
    if (!up_[i].test(i)) throw InvalidOrder("not reflexive at " + std::to_string(i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = up_[i].first(); j < n; j = up_[i].next(j + 1)) {
      if (j != i && up_[j].test(i))
        throw InvalidOrder("not antisymmetric at " + std::to_string(i) + "," + std::to_string(j));
      if (!up_[j].subset_of(up_[i])) throw InvalidOrder("not transitive through " + std::to_string(j));
    }
  }
}

std::string Poset::name(std::size_t x) const { return labels_.empty() ? std::to_string(x) : labels_[x]; }

Poset Poset::with_labels(std::vector<std::string> labels) const {
  if (!labels.empty() && labels.size() != size()) throw InvalidOrder("label count does not match size");
  Poset p = *this;
  p.labels_ = std::move(labels);
  return p;
}

std::vector<Pair> Poset::covers() const {
  std::vector<Pair> out;
  const std::size_t n = size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = up_[x].first(); y < n; y = up_[x].next(y + 1)) {
      if (y == x) continue;
      if ((up_[x] & down_[y]).count() == 2) out.emplace_back(x, y);
    }
  }
  return out;
}

std::optional<std::size_t> Poset::bottom() const {
  for (std::size_t x = 0; x < size(); ++x)
    if (up_[x].count() == size()) return x;
  return std::nullopt;
}

std::optional<std::size_t> Poset::top() const {
  for (std::size_t x = 0; x < size(); ++x)
    if (down_[x].count() == size()) return x;
  return std::nullopt;
}

bool Poset::is_downset(const Bitset& s) const {
  for (std::size_t x = s.first(); x < size(); x = s.next(x + 1))
    if (!down_[x].subset_of(s)) return false;
  return true;
}

bool Poset::is_upset(const Bitset& s) const {
  for (std::size_t x = s.first(); x < size(); x = s.next(x + 1))
    if (!up_[x].subset_of(s)) return false;
  return true;
}

Bitset Poset::down_closure(const Bitset& s) const {
  Bitset out(size());
  s.for_each([&](std::size_t x) { out |= down_[x]; });
  return out;
}

Bitset Poset::up_closure(const Bitset& s) const {
  Bitset out(size());
  s.for_each([&](std::size_t x) { out |= up_[x]; });
  return out;
}

Bitset Poset::minimal(const Bitset& s) const {
  Bitset out(size());
  s.for_each([&](std::size_t x) {
    if ((down_[x] & s).count() == 1) out.set(x);
  });
  return out;
}

Bitset Poset::maximal(const Bitset& s) const {
  Bitset out(size());
  s.for_each([&](std::size_t x) {
    if ((up_[x] & s).count() == 1) out.set(x);
  });
  return out;
}

Poset Poset::induced(std::span<const std::size_t> elements) const {
  const std::size_t m = elements.size();
  std::vector<Bitset> up(m, Bitset(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (leq(elements[a], elements[b])) up[a].set(b);
  std::vector<std::string> labels;
  if (has_labels())
    for (std::size_t e : elements) labels.push_back(labels_[e]);
  return Poset(std::move(up), std::move(labels));
}

Poset chain(std::size_t n) {
  return Poset::from_relation(n, [](std::size_t i, std::size_t j) { return i <= j; });
}

Poset antichain(std::size_t n) {
  return Poset::from_relation(n, [](std::size_t i, std::size_t j) { return i == j; });
}

std::optional<std::size_t> JoinTable::join_all(std::span<const std::size_t> xs) const {
  if (xs.empty()) return bottom_;
  std::size_t acc = xs.front();
  for (std::size_t x : xs.subspan(1)) acc = join(acc, x);
  return acc;
}

std::optional<std::size_t> JoinTable::join_all(const Bitset& xs) const {
  std::optional<std::size_t> acc;
  xs.for_each([&](std::size_t x) { acc = acc ? join(*acc, x) : x; });
  return acc ? acc : bottom_;
}

std::variant<JoinTable, JoinFailure> as_join_semilattice(const Poset& p) {
  const std::size_t n = p.size();
  std::vector<std::size_t> table(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x; y < n; ++y) {
      const Bitset upper = p.up(x) & p.up(y);
      std::optional<std::size_t> least;
      for (std::size_t u = upper.first(); u < n; u = upper.next(u + 1)) {
        if (upper.subset_of(p.up(u))) {
          least = u;
          break;
        }
      }
      if (!least) return JoinFailure{x, y};
      table[x * n + y] = table[y * n + x] = *least;
    }
  }
  return JoinTable(n, std::move(table), p.bottom());
}

JoinSemilattice JoinSemilattice::from(Poset p) {
  auto r = as_join_semilattice(p);
  if (auto* f = std::get_if<JoinFailure>(&r)) throw NotSemilattice(f->x, f->y);
  return JoinSemilattice{std::move(p), std::get<JoinTable>(std::move(r))};
}

namespace {

std::vector<std::string> merged_labels(const Poset& p, const Poset& q) {
  std::vector<std::string> labels;
  if (!p.has_labels() && !q.has_labels()) return labels;
  for (std::size_t i = 0; i < p.size(); ++i) labels.push_back(p.name(i));
  for (std::size_t i = 0; i < q.size(); ++i) labels.push_back(q.name(i));
  return labels;
}

}  // namespace

Poset direct_sum(const Poset& p, const Poset& q) {
  const std::size_t a = p.size();
  return Poset::from_relation(
      a + q.size(),
      [&](std::size_t i, std::size_t j) {
        if (i < a && j < a) return p.leq(i, j);
        if (i >= a && j >= a) return q.leq(i - a, j - a);
        return false;
      },
      merged_labels(p, q));
}

Poset lex_sum(const Poset& index, std::span<const Poset> parts) {
  if (parts.size() != index.size()) throw InvalidOrder("lex_sum needs one part per index element");
  std::vector<std::size_t> part_of, local;
  bool labelled = false;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    labelled = labelled || parts[k].has_labels();
    for (std::size_t e = 0; e < parts[k].size(); ++e) {
      part_of.push_back(k);
      local.push_back(e);
    }
  }
  std::vector<std::string> labels;
  if (labelled)
    for (std::size_t i = 0; i < part_of.size(); ++i) labels.push_back(parts[part_of[i]].name(local[i]));
  return Poset::from_relation(
      part_of.size(),
      [&](std::size_t i, std::size_t j) {
        if (part_of[i] == part_of[j]) return parts[part_of[i]].leq(local[i], local[j]);
        return index.lt(part_of[i], part_of[j]);
      },
      std::move(labels));
}

Poset product(const Poset& p, const Poset& q) {
  const std::size_t m = q.size();
  std::vector<std::string> labels;
  if (p.has_labels() || q.has_labels())
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t b = 0; b < m; ++b) labels.push_back("(" + p.name(a) + "," + q.name(b) + ")");
  return Poset::from_relation(
      p.size() * m,
      [&](std::size_t i, std::size_t j) { return p.leq(i / m, j / m) && q.leq(i % m, j % m); },
      std::move(labels));
}

Poset add_bottom(const Poset& p) {
  std::vector<std::string> labels;
  if (p.has_labels()) {
    labels.push_back("bot");
    labels.insert(labels.end(), p.labels().begin(), p.labels().end());
  }
  return Poset::from_relation(
      p.size() + 1, [&](std::size_t i, std::size_t j) { return i == 0 || (j != 0 && p.leq(i - 1, j - 1)); },
      std::move(labels));
}

Poset underline(const Poset& p) { return p.has_bottom() ? p : add_bottom(p); }

}  // namespace latticelab
