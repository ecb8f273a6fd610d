#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace formalat {

/// Fixed-universe bitset over element indices 0..size-1. Used both for
/// subsets of a group and for sets of subgroup ids.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

  std::size_t universe() const noexcept { return universe_; }

  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  /// Sets bit i, returning true if it was previously clear.
  bool insert(std::size_t i) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    std::uint64_t& w = words_[i >> 6];
    if (w & mask) return false;
    w |= mask;
    return true;
  }

  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  bool none() const noexcept {
    for (auto w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  /// this ⊆ other
  bool subset_of(const ElementSet& other) const noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      if (words_[k] & ~other.words_[k]) return false;
    }
    return true;
  }

  ElementSet& operator&=(const ElementSet& o) noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  ElementSet& operator|=(const ElementSet& o) noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  /// Set difference.
  ElementSet& operator-=(const ElementSet& o) noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
    return *this;
  }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) noexcept { return a &= b; }
  friend ElementSet operator|(ElementSet a, const ElementSet& b) noexcept { return a |= b; }
  friend ElementSet operator-(ElementSet a, const ElementSet& b) noexcept { return a -= b; }

  /// Calls f(i) for every set bit in increasing order.
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w != 0) {
        const int b = std::countr_zero(w);
        f(k * 64 + static_cast<std::size_t>(b));
        w &= w - 1;
      }
    }
  }

  std::vector<std::uint32_t> to_vector() const {
    std::vector<std::uint32_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(static_cast<std::uint32_t>(i)); });
    return out;
  }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;

  /// Total order: the set holding the smallest element of the symmetric
  /// difference is smaller. Agrees with lexicographic order of the sorted
  /// element lists when both sets have the same size.
  friend std::strong_ordering operator<=>(const ElementSet& a, const ElementSet& b) noexcept {
    for (std::size_t k = 0; k < a.words_.size() && k < b.words_.size(); ++k) {
      if (a.words_[k] == b.words_[k]) continue;
      const std::uint64_t diff = a.words_[k] ^ b.words_[k];
      const std::uint64_t low = diff & (~diff + 1);
      return (a.words_[k] & low) ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return a.words_.size() <=> b.words_.size();
  }

  std::size_t hash() const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (auto w : words_) h = (h ^ w) * 0x100000001b3ull + (h >> 29);
    return h;
  }

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const noexcept { return s.hash(); }
};

}  // namespace formalat
