#pragma once

#include <cstdint>
#include <random>

namespace subeuclid {

/// SplitMix64 mixing step.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Counter-based seed derivation: stream `index` of `master`. Trials that
/// use derived seeds are independent of evaluation order, so experiment
/// runners may execute them concurrently.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^
                    splitmix64(index * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull));
}

/// Deterministic uniform generator. std::mt19937_64 output is pinned by the
/// standard, and the [0,1) mapping below avoids the implementation-defined
/// std::uniform_real_distribution, so identical seeds give bit-identical
/// streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform integer in [0, n). Modulo bias is negligible for n << 2^64.
  std::uint64_t below(std::uint64_t n) { return eng_() % n; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace subeuclid
