#include "latticelab/kernels.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)

#include <arm_neon.h>

#include <bit>

namespace latticelab::kernels {
namespace {

constexpr std::size_t kLanes = 2;

void or_into(Word* dst, const Word* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + kLanes <= words; i += kLanes) vst1q_u64(dst + i, vorrq_u64(vld1q_u64(dst + i), vld1q_u64(src + i)));
  for (; i < words; ++i) dst[i] |= src[i];
}

void and_into(Word* dst, const Word* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + kLanes <= words; i += kLanes) vst1q_u64(dst + i, vandq_u64(vld1q_u64(dst + i), vld1q_u64(src + i)));
  for (; i < words; ++i) dst[i] &= src[i];
}

void andnot_into(Word* dst, const Word* src, std::size_t words) {
  std::size_t i = 0;
  // vbicq_u64(a, b) computes a & ~b
  for (; i + kLanes <= words; i += kLanes) vst1q_u64(dst + i, vbicq_u64(vld1q_u64(dst + i), vld1q_u64(src + i)));
  for (; i < words; ++i) dst[i] &= ~src[i];
}

inline bool any_set(uint64x2_t v) { return (vgetq_lane_u64(v, 0) | vgetq_lane_u64(v, 1)) != 0; }

bool is_subset(const Word* a, const Word* b, std::size_t words) {
  std::size_t i = 0;
  for (; i + kLanes <= words; i += kLanes)
    if (any_set(vbicq_u64(vld1q_u64(a + i), vld1q_u64(b + i)))) return false;
  for (; i < words; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

bool intersects(const Word* a, const Word* b, std::size_t words) {
  std::size_t i = 0;
  for (; i + kLanes <= words; i += kLanes)
    if (any_set(vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)))) return true;
  for (; i < words; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

inline std::size_t count_bytes(uint64x2_t v) {
  return static_cast<std::size_t>(vaddvq_u8(vcntq_u8(vreinterpretq_u8_u64(v))));
}

std::size_t popcount(const Word* a, std::size_t words) {
  std::size_t i = 0, n = 0;
  for (; i + kLanes <= words; i += kLanes) n += count_bytes(vld1q_u64(a + i));
  for (; i < words; ++i) n += static_cast<std::size_t>(std::popcount(a[i]));
  return n;
}

std::size_t and_popcount(const Word* a, const Word* b, std::size_t words) {
  std::size_t i = 0, n = 0;
  for (; i + kLanes <= words; i += kLanes) n += count_bytes(vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
  for (; i < words; ++i) n += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return n;
}

constexpr Table kNeon{"neon", or_into, and_into, andnot_into, is_subset, intersects, popcount, and_popcount};

}  // namespace

const Table* detail::neon_table() { return &kNeon; }

}  // namespace latticelab::kernels

#else

namespace latticelab::kernels {
const Table* detail::neon_table() { return nullptr; }
}  // namespace latticelab::kernels

#endif
