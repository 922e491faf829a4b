#pragma once

// Symbolic countable order types over a small grammar (finite n, w, w*,
// eta, finite sums, w.(a)) with canonical enumerations and truncations.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "latticelab/poset.hpp"

namespace latticelab {

class OrderType {
public:
  enum class Kind { Fin, Omega, OmegaStar, Eta, Sum, OmegaDot };

  static OrderType fin(std::size_t n);
  static OrderType omega();
  static OrderType omega_star();
  static OrderType eta();
  /// Throws InvalidOrder on an empty list.
  static OrderType sum(std::vector<OrderType> parts);
  /// w.(inner): inner-many copies of w placed one after another.
  static OrderType omega_dot(OrderType inner);

  Kind kind() const noexcept { return kind_; }
  std::size_t count() const noexcept { return count_; }
  const std::vector<OrderType>& children() const noexcept { return children_; }
  const OrderType& inner() const { return children_.front(); }

  /// No w* and no eta anywhere in the tree.
  bool is_ordinal() const;
  bool contains_eta() const;
  bool is_finite() const;
  std::size_t depth() const;

  /// Text syntax: `w`, `w*`, `eta`, integers, `+`, `w.(expr)`.
  std::string to_string() const;

  friend bool operator==(const OrderType&, const OrderType&) = default;

private:
  OrderType(Kind kind, std::size_t count, std::vector<OrderType> children)
      : kind_(kind), count_(count), children_(std::move(children)) {}

  Kind kind_ = Kind::Fin;
  std::size_t count_ = 0;
  std::vector<OrderType> children_;
};

/// Throws ParseError with the offending column.
OrderType parse_order_type(std::string_view text);

/// Flattens nested sums, merges adjacent finite summands, drops empty ones,
/// and rewrites w.(0) as 0 and w.(1) as w.  Symbolic only: normalisation can
/// change a canonical enumeration.
OrderType normalize(const OrderType& a);

/// Top-level summands of the normalised type (empty for the empty type).
std::vector<OrderType> atoms(const OrderType& a);

/// Whether the infinite chain of this type has a least element.
bool has_first_element(const OrderType& a);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const __int128 l = static_cast<__int128>(a.num) * b.den;
    const __int128 r = static_cast<__int128>(b.num) * a.den;
    return l < r ? std::strong_ordering::less : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  friend bool operator==(const Rational& a, const Rational& b) { return (a <=> b) == 0; }
  std::string to_string() const;
};

/// Position of a point inside its type, compared lexicographically.  Sums
/// prefix the summand index; w.(a) appends the index within the w-copy to
/// the label of the copy.
using Label = std::vector<Rational>;
std::string label_to_string(const Label& l);

/// One point of the w.(a) grid: copy `column` (the column_rank-th element
/// enumerated in a) at height `row` inside that copy.
struct GridPoint {
  std::size_t row = 0;
  std::size_t column_rank = 0;
  Label column;
};

/// First `count` points of the w.(a) grid by diagonals: row + column_rank
/// increasing, ties broken by column_rank.
std::vector<GridPoint> grid_enumeration(const OrderType& a, std::size_t count);

/// First `count` elements of the canonical enumeration of `a` (fewer when
/// `a` is finite).  Each prefix of the enumeration is the enumeration of a
/// smaller count.
std::vector<Label> enumerate(const OrderType& a, std::size_t count);

struct TruncatedChain {
  Poset chain;                         // total order; index = position
  std::vector<Label> labels;           // strictly increasing along the chain
  std::vector<std::size_t> position_of;  // chain position of the k-th enumerated element
  std::size_t stage = 0;
  std::size_t size() const noexcept { return labels.size(); }
};

TruncatedChain truncate(const OrderType& a, std::size_t n);

struct OmegaSplit {
  OrderType multiplier;  // a' with a = w.a' + n
  std::size_t remainder = 0;
};
struct FiniteCase {
  std::size_t n = 0;
};

/// a = w.a' + n, or FiniteCase when a is finite.  Throws NotOrdinal.
std::variant<OmegaSplit, FiniteCase> decompose_omega(const OrderType& a);

struct PCase {
  enum class Tag { FirstBlocked, OmegaHead, Plain };
  Tag tag = Tag::Plain;
  std::size_t n = 0;     // leading finite part for FirstBlocked
  OrderType rest = OrderType::fin(0);
};

/// Case split used to build P_a.  FirstBlocked(n, a'): 1+a does not embed in
/// a and a = n + a' with a' lacking a first element.  OmegaHead(a'): a is
/// equimorphic to w + a'.  Throws Unclassifiable when the rule set cannot
/// decide.
PCase classify_for_p(const OrderType& a);
std::string to_string(PCase::Tag tag);

}  // namespace latticelab
