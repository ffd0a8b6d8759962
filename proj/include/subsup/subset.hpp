#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace subsup {

// Subset of a ground set {0, ..., n-1}, stored as a packed bit vector.
// The word count is fixed by the universe size, so equality and hashing
// are well-defined across values of the same universe.
class Subset {
 public:
  Subset() = default;

  explicit Subset(int universe_size) : n_(universe_size) {
    if (universe_size < 0) throw std::invalid_argument("Subset: negative universe size");
    words_.assign(word_count(universe_size), 0);
  }

  static Subset from_mask(std::uint64_t mask, int universe_size) {
    Subset s(universe_size);
    if (universe_size < 64 && universe_size >= 0) {
      std::uint64_t valid = (universe_size == 0) ? 0 : ((std::uint64_t{1} << universe_size) - 1);
      if (mask & ~valid) throw std::invalid_argument("Subset::from_mask: bits outside universe");
    }
    if (!s.words_.empty()) s.words_[0] = mask;
    return s;
  }

  int universe_size() const { return n_; }

  bool contains(int v) const {
    check_element(v);
    return (words_[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1u;
  }

  void add(int v) {
    check_element(v);
    words_[static_cast<std::size_t>(v) >> 6] |= (std::uint64_t{1} << (v & 63));
  }

  void remove(int v) {
    check_element(v);
    words_[static_cast<std::size_t>(v) >> 6] &= ~(std::uint64_t{1} << (v & 63));
  }

  Subset with(int v) const {
    Subset s = *this;
    s.add(v);
    return s;
  }

  Subset without(int v) const {
    Subset s = *this;
    s.remove(v);
    return s;
  }

  int count() const {
    int c = 0;
    for (std::uint64_t w : words_) c += __builtin_popcountll(w);
    return c;
  }

  bool empty() const {
    for (std::uint64_t w : words_) {
      if (w) return false;
    }
    return true;
  }

  bool subset_of(const Subset& other) const {
    require_same_universe(other);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~other.words_[i]) return false;
    }
    return true;
  }

  bool intersects(const Subset& other) const {
    require_same_universe(other);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & other.words_[i]) return true;
    }
    return false;
  }

  Subset union_with(const Subset& other) const {
    require_same_universe(other);
    Subset s = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) s.words_[i] |= other.words_[i];
    return s;
  }

  // Number of members with index in [lo, hi).
  int count_in_range(int lo, int hi) const {
    if (lo >= hi) return 0;
    int c = 0;
    int wlo = lo >> 6, whi = (hi - 1) >> 6;
    for (int w = wlo; w <= whi; ++w) {
      std::uint64_t word = words_[static_cast<std::size_t>(w)];
      int base = w << 6;
      int a = lo - base, b = hi - base;
      if (a > 0) word &= ~std::uint64_t{0} << a;
      if (b < 64) word &= (std::uint64_t{1} << b) - 1;
      c += __builtin_popcountll(word);
    }
    return c;
  }

  // True when every index in [lo, hi) is a member.
  bool contains_all_in_range(int lo, int hi) const {
    return count_in_range(lo, hi) == hi - lo;
  }

  // Low 64 bits; only meaningful when the universe fits one word.
  std::uint64_t low_mask() const { return words_.empty() ? 0 : words_[0]; }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        int b = __builtin_ctzll(w);
        f(static_cast<int>(wi * 64) + b);
        w &= w - 1;
      }
    }
  }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for_each([&](int v) { out.push_back(v); });
    return out;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for_each([&](int v) {
      if (!first) s += ",";
      s += std::to_string(v);
      first = false;
    });
    s += "}";
    return s;
  }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ull ^ static_cast<std::uint64_t>(n_);
    for (std::uint64_t w : words_) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }

  friend bool operator==(const Subset& a, const Subset& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }
  friend bool operator!=(const Subset& a, const Subset& b) { return !(a == b); }

 private:
  static std::size_t word_count(int n) { return static_cast<std::size_t>((n + 63) / 64); }

  void check_element(int v) const {
    if (v < 0 || v >= n_) throw std::out_of_range("Subset: element out of range");
  }

  void require_same_universe(const Subset& other) const {
    if (n_ != other.n_) throw std::invalid_argument("Subset: universe size mismatch");
  }

  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct SubsetHash {
  std::size_t operator()(const Subset& s) const { return s.hash(); }
};

}  // namespace subsup
