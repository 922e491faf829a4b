#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "latticelab/kernels.hpp"

namespace latticelab {

/// A fixed-width set of element indices packed into 64-bit words.
///
/// Sets of equal width compare by numeric value, reading bit i as 2^i.  That
/// order extends inclusion, and it is the canonical order for every sequence
/// of subsets the library returns.
class Bitset {
public:
  using Word = kernels::Word;
  static constexpr std::size_t kWordBits = 64;

  Bitset() = default;
  explicit Bitset(std::size_t bits) : bits_(bits), words_((bits + kWordBits - 1) / kWordBits, 0) {}
  Bitset(std::size_t bits, std::initializer_list<std::size_t> members) : Bitset(bits) {
    for (std::size_t m : members) set(m);
  }

  static Bitset full(std::size_t bits) {
    Bitset b(bits);
    for (auto& w : b.words_) w = ~Word{0};
    b.trim();
    return b;
  }
  static Bitset from_mask(std::size_t bits, std::uint64_t mask) {
    Bitset b(bits);
    if (!b.words_.empty()) b.words_[0] = mask;
    b.trim();
    return b;
  }

  std::size_t size() const noexcept { return bits_; }
  std::size_t word_count() const noexcept { return words_.size(); }
  std::span<const Word> words() const noexcept { return words_; }
  Word* data() noexcept { return words_.data(); }
  const Word* data() const noexcept { return words_.data(); }

  bool test(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i) noexcept { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
  void reset(std::size_t i) noexcept { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }
  void assign(std::size_t i, bool v) noexcept { v ? set(i) : reset(i); }
  void clear() noexcept {
    for (auto& w : words_) w = 0;
  }

  std::size_t count() const noexcept {
    if (words_.size() <= 2) {
      std::size_t n = 0;
      for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
      return n;
    }
    return kernels::active().popcount(words_.data(), words_.size());
  }
  bool any() const noexcept {
    for (Word w : words_)
      if (w) return true;
    return false;
  }
  bool none() const noexcept { return !any(); }

  /// Low 64 bits; only meaningful for sets of width at most 64.
  std::uint64_t mask() const noexcept { return words_.empty() ? 0 : words_[0]; }

  Bitset& operator|=(const Bitset& o) noexcept {
    if (words_.size() <= 2) {
      for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    } else {
      kernels::active().or_into(words_.data(), o.words_.data(), words_.size());
    }
    return *this;
  }
  Bitset& operator&=(const Bitset& o) noexcept {
    if (words_.size() <= 2) {
      for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    } else {
      kernels::active().and_into(words_.data(), o.words_.data(), words_.size());
    }
    return *this;
  }
  /// Set difference.
  Bitset& operator-=(const Bitset& o) noexcept {
    if (words_.size() <= 2) {
      for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    } else {
      kernels::active().andnot_into(words_.data(), o.words_.data(), words_.size());
    }
    return *this;
  }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }

  Bitset complement() const {
    Bitset b = *this;
    for (auto& w : b.words_) w = ~w;
    b.trim();
    return b;
  }

  bool subset_of(const Bitset& o) const noexcept {
    if (words_.size() <= 2) {
      for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~o.words_[i]) return false;
      return true;
    }
    return kernels::active().is_subset(words_.data(), o.words_.data(), words_.size());
  }
  bool intersects(const Bitset& o) const noexcept {
    if (words_.size() <= 2) {
      for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & o.words_[i]) return true;
      return false;
    }
    return kernels::active().intersects(words_.data(), o.words_.data(), words_.size());
  }

  /// Index of the first member at or after `from`, or size() when none.
  std::size_t next(std::size_t from) const noexcept {
    if (from >= bits_) return bits_;
    std::size_t w = from / kWordBits;
    Word cur = words_[w] & (~Word{0} << (from % kWordBits));
    while (true) {
      if (cur) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(cur));
      if (++w == words_.size()) return bits_;
      cur = words_[w];
    }
  }
  std::size_t first() const noexcept { return next(0); }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = first(); i < bits_; i = next(i + 1)) f(i);
  }
  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  /// One character per element, element 0 first: "0110".
  std::string to_string() const {
    std::string s(bits_, '0');
    for_each([&](std::size_t i) { s[i] = '1'; });
    return s;
  }

  friend bool operator==(const Bitset& a, const Bitset& b) noexcept {
    return a.bits_ == b.bits_ && a.words_ == b.words_;
  }
  friend std::strong_ordering operator<=>(const Bitset& a, const Bitset& b) noexcept {
    if (auto c = a.bits_ <=> b.bits_; c != 0) return c;
    for (std::size_t i = a.words_.size(); i-- > 0;)
      if (auto c = a.words_[i] <=> b.words_[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }

  std::size_t hash() const noexcept {
    std::size_t h = bits_ * 0x9e3779b97f4a7c15ULL;
    for (Word w : words_) h = (h ^ w) * 0x100000001b3ULL + (h >> 29);
    return h;
  }

private:
  void trim() noexcept {
    if (bits_ % kWordBits != 0 && !words_.empty()) words_.back() &= (Word{1} << (bits_ % kWordBits)) - 1;
  }

  std::size_t bits_ = 0;
  std::vector<Word> words_;
};

struct BitsetHash {
  std::size_t operator()(const Bitset& b) const noexcept { return b.hash(); }
};

}  // namespace latticelab
