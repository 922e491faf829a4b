#pragma once

// Word-parallel kernels over packed bit rows.  Every kernel has a scalar
// reference implementation; vector variants (AVX2 on x86-64, NEON on
// AArch64) are compiled when the toolchain supports them and selected at
// runtime.  All variants must agree bit-for-bit with the scalar one.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace latticelab::kernels {

using Word = std::uint64_t;

struct Table {
  std::string_view name;
  // dst |= src
  void (*or_into)(Word* dst, const Word* src, std::size_t words);
  // dst &= src
  void (*and_into)(Word* dst, const Word* src, std::size_t words);
  // dst &= ~src
  void (*andnot_into)(Word* dst, const Word* src, std::size_t words);
  // a is a subset of b
  bool (*is_subset)(const Word* a, const Word* b, std::size_t words);
  // a and b share a set bit
  bool (*intersects)(const Word* a, const Word* b, std::size_t words);
  std::size_t (*popcount)(const Word* a, std::size_t words);
  std::size_t (*and_popcount)(const Word* a, const Word* b, std::size_t words);
};

const Table& scalar();

/// Variants usable on this machine, scalar first.
std::vector<const Table*> available();

/// The table used by Bitset and the closure routines.  Picks the widest
/// supported variant unless LATTICELAB_KERNELS=scalar|avx2|neon says otherwise.
const Table& active();

/// Force a variant by name; returns false when it is not available here.
bool select(std::string_view name);

namespace detail {
const Table* avx2_table();  // nullptr when not compiled in
const Table* neon_table();
}  // namespace detail

}  // namespace latticelab::kernels
