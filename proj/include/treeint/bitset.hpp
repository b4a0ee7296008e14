#pragma once

// Fixed-capacity bitsets used for edge sets of K_n and for general set systems.

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace treeint {

template <std::size_t Words>
class BitSet {
 public:
  static constexpr std::size_t kWords = Words;
  static constexpr std::size_t kCapacity = Words * 64;

  constexpr BitSet() = default;

  BitSet(std::initializer_list<int> elements) {
    for (int e : elements) set(e);
  }

  static BitSet from_elements(const std::vector<int>& elements) {
    BitSet s;
    for (int e : elements) s.set(e);
    return s;
  }

  void set(int i) {
    check_index(i);
    words_[i / 64] |= std::uint64_t{1} << (i % 64);
  }

  void reset(int i) {
    check_index(i);
    words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
  }

  [[nodiscard]] bool test(int i) const {
    if (i < 0 || static_cast<std::size_t>(i) >= kCapacity) return false;
    return (words_[i / 64] >> (i % 64)) & 1U;
  }

  [[nodiscard]] int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  [[nodiscard]] bool empty() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  [[nodiscard]] bool is_subset_of(const BitSet& other) const {
    for (std::size_t i = 0; i < Words; ++i)
      if ((words_[i] & ~other.words_[i]) != 0) return false;
    return true;
  }

  [[nodiscard]] bool intersects(const BitSet& other) const {
    for (std::size_t i = 0; i < Words; ++i)
      if ((words_[i] & other.words_[i]) != 0) return true;
    return false;
  }

  [[nodiscard]] int intersection_count(const BitSet& other) const {
    int c = 0;
    for (std::size_t i = 0; i < Words; ++i) c += std::popcount(words_[i] & other.words_[i]);
    return c;
  }

  // Index of the lowest / highest set bit, -1 when empty.
  [[nodiscard]] int lowest() const {
    for (std::size_t i = 0; i < Words; ++i)
      if (words_[i] != 0) return static_cast<int>(i * 64) + std::countr_zero(words_[i]);
    return -1;
  }

  [[nodiscard]] int highest() const {
    for (std::size_t i = Words; i-- > 0;)
      if (words_[i] != 0) return static_cast<int>(i * 64) + 63 - std::countl_zero(words_[i]);
    return -1;
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t i = 0; i < Words; ++i) {
      std::uint64_t w = words_[i];
      while (w != 0) {
        fn(static_cast<int>(i * 64) + std::countr_zero(w));
        w &= w - 1;
      }
    }
  }

  [[nodiscard]] std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(count());
    for_each([&](int e) { out.push_back(e); });
    return out;
  }

  BitSet& operator&=(const BitSet& o) {
    for (std::size_t i = 0; i < Words; ++i) words_[i] &= o.words_[i];
    return *this;
  }
  BitSet& operator|=(const BitSet& o) {
    for (std::size_t i = 0; i < Words; ++i) words_[i] |= o.words_[i];
    return *this;
  }
  // Set difference.
  BitSet& operator-=(const BitSet& o) {
    for (std::size_t i = 0; i < Words; ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend BitSet operator&(BitSet a, const BitSet& b) { return a &= b; }
  friend BitSet operator|(BitSet a, const BitSet& b) { return a |= b; }
  friend BitSet operator-(BitSet a, const BitSet& b) { return a -= b; }

  friend bool operator==(const BitSet&, const BitSet&) = default;

  // Canonical order: numeric value of the bit pattern.
  friend std::strong_ordering operator<=>(const BitSet& a, const BitSet& b) {
    for (std::size_t i = Words; i-- > 0;)
      if (a.words_[i] != b.words_[i]) return a.words_[i] <=> b.words_[i];
    return std::strong_ordering::equal;
  }

  [[nodiscard]] std::uint64_t word(std::size_t i) const { return words_[i]; }

  [[nodiscard]] std::size_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto w : words_) h = (h ^ w) * 0x100000001b3ULL + (h >> 29);
    return static_cast<std::size_t>(h);
  }

 private:
  static void check_index(int i) {
    if (i < 0 || static_cast<std::size_t>(i) >= kCapacity)
      throw std::out_of_range("bitset index out of range");
  }

  std::array<std::uint64_t, Words> words_{};
};

// Edge sets of K_n for n <= 11 (C(11,2) = 55 edges).
using EdgeSet = BitSet<1>;
// General set systems over a ground set of at most 256 elements.
using WideSet = BitSet<4>;

template <class Set>
struct SetHash {
  std::size_t operator()(const Set& s) const { return s.hash(); }
};

// Converts between capacities; throws if an element does not fit.
template <class To, class From>
To convert_set(const From& from) {
  To out;
  from.for_each([&](int e) { out.set(e); });
  return out;
}

// Calls fn(subset) for every subset of `s`, including the empty set and `s` itself.
template <class Set, class Fn>
void for_each_subset(const Set& s, Fn&& fn) {
  const std::vector<int> elems = s.elements();
  const std::size_t k = elems.size();
  if (k >= 31) throw std::length_error("subset enumeration over more than 30 elements");
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << k); ++mask) {
    Set sub;
    for (std::size_t i = 0; i < k; ++i)
      if ((mask >> i) & 1U) sub.set(elems[i]);
    fn(sub);
  }
}

}  // namespace treeint
