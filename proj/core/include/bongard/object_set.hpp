#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace bongard {

/// Ordered set of object indices into one scene's universe (originals plus
/// synthetic transform outputs). Fixed capacity, value semantics.
class ObjectSet {
 public:
  static constexpr std::size_t kCapacity = 256;

  ObjectSet() = default;

  void insert(std::size_t i) noexcept { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void erase(std::size_t i) noexcept { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  bool contains(std::size_t i) const noexcept { return (words_[i / 64] >> (i % 64)) & 1U; }

  std::size_t size() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const noexcept { return (words_[0] | words_[1] | words_[2] | words_[3]) == 0; }

  ObjectSet& operator&=(const ObjectSet& o) noexcept {
    for (std::size_t k = 0; k < kWords; ++k) words_[k] &= o.words_[k];
    return *this;
  }
  ObjectSet& operator|=(const ObjectSet& o) noexcept {
    for (std::size_t k = 0; k < kWords; ++k) words_[k] |= o.words_[k];
    return *this;
  }
  ObjectSet& operator-=(const ObjectSet& o) noexcept {
    for (std::size_t k = 0; k < kWords; ++k) words_[k] &= ~o.words_[k];
    return *this;
  }
  friend ObjectSet operator&(ObjectSet a, const ObjectSet& b) noexcept { return a &= b; }
  friend ObjectSet operator|(ObjectSet a, const ObjectSet& b) noexcept { return a |= b; }
  friend ObjectSet operator-(ObjectSet a, const ObjectSet& b) noexcept { return a -= b; }
  friend bool operator==(const ObjectSet&, const ObjectSet&) = default;

  /// Visits members in increasing index order.
  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t k = 0; k < kWords; ++k) {
      std::uint64_t w = words_[k];
      while (w != 0) {
        const int bit = std::countr_zero(w);
        fn(k * 64 + static_cast<std::size_t>(bit));
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

 private:
  static constexpr std::size_t kWords = kCapacity / 64;
  std::array<std::uint64_t, kWords> words_{};
};

}  // namespace bongard
