#pragma once

#include <cstdint>
#include <random>

namespace sparsegcn {

/// Deterministic RNG used everywhere sampling happens. Wraps mt19937_64 but
/// converts to doubles explicitly, so two builds produce the same stream
/// (uniform_real_distribution is not pinned down by the standard).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [-1, 1).
  double uniform_symmetric() { return 2.0 * uniform() - 1.0; }

  /// Unbiased uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % bound;
  }

  std::uint64_t next() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed derivation for independent streams: fold every word through
/// splitmix64 so nearby (seed, tag) pairs land far apart.
inline std::uint64_t derive_seed(std::uint64_t seed) { return splitmix64(seed); }

template <typename... Rest>
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t word, Rest... rest) {
  return derive_seed(splitmix64(seed ^ splitmix64(word)), rest...);
}

}  // namespace sparsegcn
