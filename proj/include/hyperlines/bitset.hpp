#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace hyperlines {

/// Dynamic fixed-width bitset used for point sets and perp rows.
/// All set positions are < size(); tail bits of the last word stay zero,
/// so whole-word equality, hashing and popcounts are safe.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(int n) : n_(n), w_(static_cast<std::size_t>((n + 63) / 64), 0) {
    assert(n >= 0);
  }

  int size() const { return n_; }

  void set(int i) {
    assert(0 <= i && i < n_);
    w_[static_cast<std::size_t>(i >> 6)] |= bit(i);
  }
  void reset(int i) {
    assert(0 <= i && i < n_);
    w_[static_cast<std::size_t>(i >> 6)] &= ~bit(i);
  }
  bool test(int i) const {
    assert(0 <= i && i < n_);
    return w_[static_cast<std::size_t>(i >> 6)] & bit(i);
  }

  int count() const {
    int c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
  }
  bool any() const {
    for (auto w : w_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  Bitset& operator&=(const Bitset& o) {
    assert(n_ == o.n_);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) {
    assert(n_ == o.n_);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  /// this &= ~o
  Bitset& and_not(const Bitset& o) {
    assert(n_ == o.n_);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
  }
  friend Bitset operator&(Bitset a, const Bitset& b) {
    a &= b;
    return a;
  }
  friend Bitset operator|(Bitset a, const Bitset& b) {
    a |= b;
    return a;
  }

  /// Flips every in-range bit.
  Bitset complement() const {
    Bitset r(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = ~w_[i];
    r.mask_tail();
    return r;
  }

  bool subset_of(const Bitset& o) const {
    assert(n_ == o.n_);
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  bool intersects(const Bitset& o) const {
    assert(n_ == o.n_);
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  friend bool operator==(const Bitset&, const Bitset&) = default;

  /// Index of the lowest set bit, -1 when empty.
  int find_first() const { return find_from(0); }
  /// Index of the lowest set bit > i, -1 when none.
  int find_next(int i) const { return find_from(i + 1); }

  template <class Fn>
  void for_each(Fn fn) const {
    for (int i = find_first(); i >= 0; i = find_next(i)) fn(i);
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for_each([&](int i) { out.push_back(i); });
    return out;
  }

  std::size_t hash() const {
    std::size_t h = static_cast<std::size_t>(n_);
    for (auto w : w_) h = h * 1099511628211ull + static_cast<std::size_t>(w);
    return h;
  }

 private:
  static std::uint64_t bit(int i) { return std::uint64_t{1} << (i & 63); }
  void mask_tail() {
    if (n_ & 63) w_.back() &= (std::uint64_t{1} << (n_ & 63)) - 1;
  }
  int find_from(int i) const {
    if (i < 0) i = 0;
    auto word = static_cast<std::size_t>(i >> 6);
    if (word >= w_.size()) return -1;
    std::uint64_t cur = w_[word] & ~((std::uint64_t{1} << (i & 63)) - 1);
    while (true) {
      if (cur) return static_cast<int>(word << 6) + std::countr_zero(cur);
      if (++word == w_.size()) return -1;
      cur = w_[word];
    }
  }

  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace hyperlines

template <>
struct std::hash<hyperlines::Bitset> {
  std::size_t operator()(const hyperlines::Bitset& b) const { return b.hash(); }
};
