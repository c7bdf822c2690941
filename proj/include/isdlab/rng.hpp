#ifndef ISDLAB_RNG_HPP
#define ISDLAB_RNG_HPP

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace isdlab {

// Seeded generator with portable bounded draws. std::uniform_*_distribution
// output differs across standard libraries, so draws are derived here from
// raw mt19937_64 words to keep seeded runs byte-identical everywhere.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound); bound must be > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = bound * ((~std::uint64_t(0)) / bound);
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % bound;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool coin() { return engine_() >> 63; }

  /// First `take` entries of a seeded Fisher-Yates shuffle of 0..n-1.
  std::vector<std::size_t> partial_shuffle(std::size_t n, std::size_t take) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < take && i < n; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(below(n - i));
      std::swap(idx[i], idx[j]);
    }
    idx.resize(take < n ? take : n);
    return idx;
  }

  /// Child seed for an independent stream (SplitMix64 finalizer).
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace isdlab

#endif
