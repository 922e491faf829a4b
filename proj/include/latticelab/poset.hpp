#pragma once

// Finite posets on canonical indices 0..n-1 stored as reflexive <= bit
// matrices, plus the elementary computations built on them.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "latticelab/bitset.hpp"

namespace latticelab {

using Pair = std::pair<std::size_t, std::size_t>;

class Poset {
public:
  Poset() = default;

  /// Reflexive-transitive closure of the given cover pairs (lower, upper).
  /// Throws CycleError when the closure is not antisymmetric.
  static Poset from_covers(std::size_t size, std::span<const Pair> covers,
                           std::vector<std::string> labels = {});

  /// Rows are up-sets: row i holds every j with i <= j.  The relation is
  /// validated; throws InvalidOrder on any axiom failure.
  static Poset from_up_rows(std::vector<Bitset> up, std::vector<std::string> labels = {});

  /// Builds from a binary predicate `leq(i, j)`, validating the axioms.
  template <typename Leq>
  static Poset from_relation(std::size_t size, Leq&& leq, std::vector<std::string> labels = {}) {
    std::vector<Bitset> up(size, Bitset(size));
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j)
        if (leq(i, j)) up[i].set(j);
    return from_up_rows(std::move(up), std::move(labels));
  }

  std::size_t size() const noexcept { return up_.size(); }
  bool empty() const noexcept { return up_.empty(); }

  bool leq(std::size_t x, std::size_t y) const noexcept { return up_[x].test(y); }
  bool lt(std::size_t x, std::size_t y) const noexcept { return x != y && leq(x, y); }
  bool comparable(std::size_t x, std::size_t y) const noexcept { return leq(x, y) || leq(y, x); }

  /// {y : x <= y}
  const Bitset& up(std::size_t x) const noexcept { return up_[x]; }
  /// {y : y <= x}
  const Bitset& down(std::size_t x) const noexcept { return down_[x]; }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  bool has_labels() const noexcept { return !labels_.empty(); }
  /// Display name: the label when present, else the index.
  std::string name(std::size_t x) const;
  Poset with_labels(std::vector<std::string> labels) const;

  /// Hasse diagram, sorted lexicographically.
  std::vector<Pair> covers() const;

  std::optional<std::size_t> bottom() const;
  std::optional<std::size_t> top() const;
  bool has_bottom() const { return bottom().has_value(); }

  bool is_downset(const Bitset& s) const;
  bool is_upset(const Bitset& s) const;
  Bitset down_closure(const Bitset& s) const;
  Bitset up_closure(const Bitset& s) const;
  Bitset minimal(const Bitset& s) const;
  Bitset maximal(const Bitset& s) const;
  Bitset all() const { return Bitset::full(size()); }

  /// Sub-poset on the listed elements; element k of the result is elements[k].
  Poset induced(std::span<const std::size_t> elements) const;

  /// Same order relation (labels are display-only and ignored).
  friend bool operator==(const Poset& a, const Poset& b) { return a.up_ == b.up_; }

private:
  Poset(std::vector<Bitset> up, std::vector<std::string> labels);
  void check_axioms() const;

  std::vector<Bitset> up_;
  std::vector<Bitset> down_;
  std::vector<std::string> labels_;
};

Poset chain(std::size_t n);
Poset antichain(std::size_t n);

/// Every pair has a least upper bound; `bottom` is the least element when
/// one exists.
class JoinTable {
public:
  JoinTable() = default;
  JoinTable(std::size_t size, std::vector<std::size_t> table, std::optional<std::size_t> bottom)
      : size_(size), table_(std::move(table)), bottom_(bottom) {}

  std::size_t size() const noexcept { return size_; }
  std::size_t join(std::size_t x, std::size_t y) const noexcept { return table_[x * size_ + y]; }
  const std::optional<std::size_t>& bottom() const noexcept { return bottom_; }
  /// Join of a finite set; the empty join is the bottom (nullopt without one).
  std::optional<std::size_t> join_all(std::span<const std::size_t> xs) const;
  std::optional<std::size_t> join_all(const Bitset& xs) const;

private:
  std::size_t size_ = 0;
  std::vector<std::size_t> table_;
  std::optional<std::size_t> bottom_;
};

/// The lexicographically least pair without a least upper bound.
struct JoinFailure {
  std::size_t x, y;
  friend bool operator==(const JoinFailure&, const JoinFailure&) = default;
};

std::variant<JoinTable, JoinFailure> as_join_semilattice(const Poset& p);

struct JoinSemilattice {
  Poset order;
  JoinTable joins;

  /// Throws NotSemilattice with the failing pair.
  static JoinSemilattice from(Poset p);
  std::size_t size() const noexcept { return order.size(); }
  std::size_t join(std::size_t x, std::size_t y) const noexcept { return joins.join(x, y); }
  const std::optional<std::size_t>& bottom() const noexcept { return joins.bottom(); }
};

struct HeightWidth {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<std::size_t> longest_chain;     // sorted indices
  std::vector<std::size_t> largest_antichain; // sorted indices
};

/// Longest chain and largest antichain, each with the lexicographically
/// least optimal witness.
HeightWidth height_width(const Poset& p);
std::size_t height(const Poset& p);
std::size_t width(const Poset& p);

struct LinearExtensions {
  std::vector<std::vector<std::size_t>> extensions;  // listed bottom first
  bool complete = true;                              // false when `limit` was hit
  std::size_t count() const noexcept { return extensions.size(); }
};

/// Linear extensions in lexicographic order, at most `limit` of them.
LinearExtensions linear_extensions(const Poset& p, std::size_t limit);
bool is_linear_extension(const Poset& p, std::span<const std::size_t> order);
/// The lexicographically least linear extension.
std::vector<std::size_t> first_linear_extension(const Poset& p);

/// Lexicographically least order-isomorphism p -> q, if any.
std::optional<std::vector<std::size_t>> isomorphic(const Poset& p, const Poset& q);

/// Disjoint union; q's elements follow p's.
Poset direct_sum(const Poset& p, const Poset& q);
/// Disjoint union of parts, part i wholly below part j when i < j in index.
Poset lex_sum(const Poset& index, std::span<const Poset> parts);
/// Componentwise order; element (a, b) has index a * |q| + b.
Poset product(const Poset& p, const Poset& q);
/// Always adjoins a fresh least element at index 0.
Poset add_bottom(const Poset& p);
/// Adjoins a least element only when none exists.
Poset underline(const Poset& p);

/// Reflexive-transitive closure in place over up-rows; false on a cycle.
bool close_transitively(std::vector<Bitset>& up);

}  // namespace latticelab
