#pragma once

// Order dimension through critical pairs: dim <= k iff the critical pairs
// split into k classes, each reversible by one linear extension.

#include <cstddef>
#include <optional>
#include <vector>

#include "latticelab/poset.hpp"

namespace latticelab {

/// (a, b) incomparable with everything strictly below a below b and
/// everything strictly above b above a.  Lexicographic order.
std::vector<Pair> critical_pairs(const Poset& p);

struct Realizer {
  std::vector<std::vector<std::size_t>> extensions;  // each lists the elements bottom to top
};

/// True when the extensions are linear extensions whose intersection is p.
bool is_realizer(const Poset& p, const Realizer& r);

/// A realizer with at most k extensions, or nullopt.  Complete search over
/// class assignments, new classes opened in order.  Throws SizeLimit above
/// max_elements.
std::optional<Realizer> order_dimension(const Poset& p, std::size_t k, std::size_t max_elements = 64);

struct DimensionResult {
  std::optional<std::size_t> dimension;  // nullopt: larger than kmax
  std::optional<Realizer> realizer;
};

/// Least k <= kmax with a realizer; 0 for the empty poset.
DimensionResult dimension_exact(const Poset& p, std::size_t kmax = 4, std::size_t max_elements = 10);

}  // namespace latticelab
