// Reproducible randomness. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; bounded draws use rejection sampling so
// results do not depend on a library's distribution implementation.
#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace bilin {

/// Independent stream seed for item k of a seeded run (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (k + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    // reject the top 2^64 mod bound values
    const std::uint64_t rem = (0 - bound) % bound;
    std::uint64_t x = eng_();
    while (rem != 0 && x > ~std::uint64_t{0} - rem) x = eng_();
    return x % bound;
  }

  /// Decreasing-index exchange shuffle: for i = n-1 down to 1 swap v[i]
  /// with v[below(i + 1)].
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i-- > 1;) {
      const auto j = static_cast<std::size_t>(below(i + 1));
      std::swap(v[i], v[j]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace bilin
