#pragma once

// Generators for sierpinskisations, their monotonic and join-closed
// variants, the interval semilattices, finite powersets and the S/P/Q
// families indexed by an order type.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "latticelab/ideals.hpp"
#include "latticelab/order_type.hpp"
#include "latticelab/poset.hpp"

namespace latticelab {

inline constexpr std::size_t kDefaultMaxElements = 64;

/// How the enumeration side is matched with the chain side.  Identity pairs
/// the k-th enumerated point with itself; Diagonal is the same map (the
/// canonical enumeration of w.(a) already walks the grid by diagonals).
enum class PhiStrategy { Identity, Reverse, Diagonal, SeededRandom };
PhiStrategy parse_phi(std::string_view name);
const char* to_string(PhiStrategy s);

struct SierpinskisationSpec {
  OrderType alpha = OrderType::omega();
  std::size_t stage = 0;
  PhiStrategy strategy = PhiStrategy::Identity;
  std::vector<std::size_t> phi;  // explicit map, overrides `strategy` when non-empty
  std::uint64_t seed = 0;
};

/// phi[x] = chain position matched with the x-th point of the enumeration.
std::vector<std::size_t> resolve_phi(const SierpinskisationSpec& spec, const TruncatedChain& t);

/// x <= y iff x <= y as integers and phi(x) <= phi(y) in the chain.
Poset sierpinskisation(const TruncatedChain& t, std::span<const std::size_t> phi);
Poset sierpinskisation(const SierpinskisationSpec& spec);

/// Sierpinskisation of w.a with its canonical (column-monotone) enumeration;
/// `stage` points of the grid.
Poset monotonic_sierp(const OrderType& a, std::size_t stage);

/// The points of monotonic_sierp(a, stage) as pairs (enumeration index,
/// column) in the product of two chains, closed under componentwise max.
/// Labels are "k:column".
Poset lattice_sierp(const OrderType& a, std::size_t stage);
/// lattice_sierp with a least element, added exactly when the chain of type
/// a has none (a finite stage may have one by accident).
Poset bottomed_lattice_sierp(const OrderType& a, std::size_t stage);

/// Bottom plus the pairs (i,j), i < j < n, under (i,j) <= (i',j') iff
/// i' <= i and j <= j'.
Poset figure1(std::size_t n);
Poset figure2(std::size_t n);

/// Subsets of {0..k-1} under inclusion; element index = bitmask.
Poset powerset_semilattice(std::size_t k, std::size_t max_elements = kDefaultMaxElements);

Poset build_S_alpha(const OrderType& a, std::size_t stage);
Poset build_P_alpha(const OrderType& a, std::size_t stage);
DownsetLattice build_Q_alpha(const OrderType& a, std::size_t stage, std::size_t max_downsets = kDefaultMaxDownsets);

}  // namespace latticelab
