// Compiled with -mavx2 only; never call these without a runtime CPU check.
#include "latticelab/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__)

#include <immintrin.h>

#include <bit>

namespace latticelab::kernels {
namespace {

constexpr std::size_t kLanes = 4;

inline __m256i load(const Word* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }
inline void store(Word* p, __m256i v) { _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v); }

// Per-byte popcount through a nibble lookup, summed into four 64-bit lanes.
inline __m256i popcount_lanes(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  const __m256i bytes = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
  return _mm256_sad_epu8(bytes, _mm256_setzero_si256());
}

inline std::size_t horizontal_sum(__m256i acc) {
  alignas(32) Word lanes[kLanes];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  return static_cast<std::size_t>(lanes[0] + lanes[1] + lanes[2] + lanes[3]);
}

void or_into(Word* dst, const Word* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + kLanes <= words; i += kLanes) store(dst + i, _mm256_or_si256(load(dst + i), load(src + i)));
  for (; i < words; ++i) dst[i] |= src[i];
}

void and_into(Word* dst, const Word* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + kLanes <= words; i += kLanes) store(dst + i, _mm256_and_si256(load(dst + i), load(src + i)));
  for (; i < words; ++i) dst[i] &= src[i];
}

void andnot_into(Word* dst, const Word* src, std::size_t words) {
  std::size_t i = 0;
  // _mm256_andnot_si256(a, b) computes ~a & b
  for (; i + kLanes <= words; i += kLanes) store(dst + i, _mm256_andnot_si256(load(src + i), load(dst + i)));
  for (; i < words; ++i) dst[i] &= ~src[i];
}

bool is_subset(const Word* a, const Word* b, std::size_t words) {
  std::size_t i = 0;
  for (; i + kLanes <= words; i += kLanes) {
    const __m256i extra = _mm256_andnot_si256(load(b + i), load(a + i));
    if (!_mm256_testz_si256(extra, extra)) return false;
  }
  for (; i < words; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

bool intersects(const Word* a, const Word* b, std::size_t words) {
  std::size_t i = 0;
  for (; i + kLanes <= words; i += kLanes)
    if (!_mm256_testz_si256(load(a + i), load(b + i))) return true;
  for (; i < words; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

std::size_t popcount(const Word* a, std::size_t words) {
  std::size_t i = 0;
  __m256i acc = _mm256_setzero_si256();
  for (; i + kLanes <= words; i += kLanes) acc = _mm256_add_epi64(acc, popcount_lanes(load(a + i)));
  std::size_t n = horizontal_sum(acc);
  for (; i < words; ++i) n += static_cast<std::size_t>(std::popcount(a[i]));
  return n;
}

std::size_t and_popcount(const Word* a, const Word* b, std::size_t words) {
  std::size_t i = 0;
  __m256i acc = _mm256_setzero_si256();
  for (; i + kLanes <= words; i += kLanes)
    acc = _mm256_add_epi64(acc, popcount_lanes(_mm256_and_si256(load(a + i), load(b + i))));
  std::size_t n = horizontal_sum(acc);
  for (; i < words; ++i) n += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return n;
}

constexpr Table kAvx2{"avx2", or_into, and_into, andnot_into, is_subset, intersects, popcount, and_popcount};

}  // namespace

const Table* detail::avx2_table() { return &kAvx2; }

}  // namespace latticelab::kernels

#else

namespace latticelab::kernels {
const Table* detail::avx2_table() { return nullptr; }
}  // namespace latticelab::kernels

#endif
