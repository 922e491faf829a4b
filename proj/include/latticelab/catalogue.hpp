#pragma once

// Exhaustive and seeded-random poset families used by property checks.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "latticelab/poset.hpp"

namespace latticelab {

/// One representative per isomorphism type of posets with exactly `n`
/// elements, optionally restricted to those passing `keep`.  Representatives
/// are naturally labelled (i < j whenever i is below j) and listed in
/// generation order, so the output is deterministic.
std::vector<Poset> poset_catalogue(std::size_t n, const std::function<bool(const Poset&)>& keep = {});

/// Isomorphism types of finite lattices (join-semilattices with a least
/// element) with exactly `n` elements.
std::vector<Poset> lattice_catalogue(std::size_t n);

/// A random poset on `n` elements: random comparabilities between a random
/// ordering, transitively closed, then relabelled by a random permutation.
Poset random_poset(std::size_t n, std::mt19937_64& rng);

/// Uniform value in [0, bound) from raw generator output; stable across
/// standard library implementations.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// Fisher-Yates with uniform_below.
void shuffle(std::vector<std::size_t>& v, std::mt19937_64& rng);

}  // namespace latticelab
