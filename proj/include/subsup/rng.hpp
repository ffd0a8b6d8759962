#pragma once

#include <cstdint>
#include <vector>

namespace subsup {

// splitmix64 stream. Used instead of <random> distributions so that seeded
// runs reproduce bit-identically across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform in {0, ..., bound-1}; bound must be positive.
  std::uint64_t below(std::uint64_t bound) { return next_u64() % bound; }

  int uniform_int(int lo, int hi) {  // inclusive range
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool bernoulli(double p) { return uniform() < p; }

  // First k positions of a Fisher-Yates shuffle of {0..n-1}.
  std::vector<int> sample_without_replacement(int n, int k) {
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    if (k > n) k = n;
    for (int i = 0; i < k; ++i) {
      int j = i + static_cast<int>(below(static_cast<std::uint64_t>(n - i)));
      std::swap(idx[i], idx[j]);
    }
    idx.resize(static_cast<std::size_t>(k));
    return idx;
  }

  std::uint64_t fork(std::uint64_t stream_id) {
    // Derive an independent child seed; keeps per-instance streams decoupled
    // from the draw order of the parent.
    Rng child(state_ ^ (0x9e3779b97f4a7c15ull * (stream_id + 1)));
    return child.next_u64();
  }

 private:
  std::uint64_t state_;
};

}  // namespace subsup
