#pragma once

#include <cstdint>
#include <random>

namespace darwin {

/// Seedable generator: std::mt19937_64 with distribution mappings written out
/// here, so a given seed yields the same stream with every standard library.
///
/// Stream semantics: `Rng(seed)` seeds the engine with `seed` directly.
/// Independent sub-streams (one per run, say) come from `Rng::derive`, a
/// splitmix64 hash of (seed, stream).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n), unbiased by rejection. n must be positive.
  std::uint64_t below(std::uint64_t n);

  /// Standard normal via Box-Muller; the second variate of each pair is cached.
  double normal();

  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace darwin
