#pragma once

// Downset lattices of finite posets: all initial segments, ideals, and the
// finitely generated initial segments, each stored as bitsets over the base.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "latticelab/bitset.hpp"
#include "latticelab/poset.hpp"

namespace latticelab {

inline constexpr std::size_t kDefaultMaxDownsets = std::size_t{1} << 20;

enum class DownsetKind { All, Ideals, FinGen };
const char* to_string(DownsetKind kind);

enum class DownsetLabels { Bits, Members };

struct DownsetLattice {
  Poset base;
  std::vector<Bitset> downsets;  // sorted by Bitset order, so inclusion-compatible
  DownsetKind kind = DownsetKind::All;
  // every principal downset of the base is finite and stable as the stage
  // grows; the family layer sets this for truncation families
  bool principal_finite = true;

  std::size_t size() const noexcept { return downsets.size(); }
  std::optional<std::size_t> index_of(const Bitset& s) const;
  /// Inclusion order.  Labels are bit strings ("0110", element 0 first) or
  /// member sets using the base names ("{a,b}").
  Poset order(DownsetLabels style = DownsetLabels::Bits) const;
};

/// Throws SizeLimit when more than `max_downsets` downsets exist.
DownsetLattice all_downsets(const Poset& p, std::size_t max_downsets = kDefaultMaxDownsets);
/// Non-empty up-directed downsets, enumerated from the definition.
DownsetLattice ideals_of(const Poset& p, std::size_t max_downsets = kDefaultMaxDownsets);
/// Union closure of the principal downsets, starting from the empty set.
DownsetLattice fin_gen_downsets(const Poset& p, std::size_t max_downsets = kDefaultMaxDownsets,
                                bool principal_finite = true);

bool is_directed(const Poset& p, const Bitset& s);

/// Downset of the joins of the finite subsets of A.  Throws
/// PreconditionFailed when the semilattice has no bottom.
Bitset generated_ideal(const JoinSemilattice& l, const Bitset& a);

/// Elements k with: k <= join(I) implies k in I for every ideal I.  Throws
/// NotLattice unless `l` is a non-empty finite lattice.
Bitset compact_elements(const Poset& l);

struct MaximalChains {
  std::vector<std::vector<std::size_t>> chains;  // indices into the lattice, bottom first
  std::uint64_t total = 0;                        // saturates at UINT64_MAX
  bool complete = true;
};

/// Maximal chains of the inclusion order in lexicographic order of index
/// sequences, at most `limit` of them.
MaximalChains maximal_chains(const DownsetLattice& l, std::size_t limit);

}  // namespace latticelab
