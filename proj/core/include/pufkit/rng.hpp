#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace pufkit {

// Deterministic randomness source. All simulation randomness flows from one
// master seed; independent streams are derived by mixing the seed with a tag
// or an index, so results are reproducible bit-for-bit across runs and do not
// depend on evaluation order between streams.
//
// Distribution transforms are implemented here instead of <random> adaptors
// because the standard leaves those implementation-defined; mt19937_64 itself
// is fully specified.
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed), engine_(seed) {}

  uint64_t seed() const { return seed_; }
  uint64_t next_u64() { return engine_(); }

  // Uniform double in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n). n == 0 is a caller bug.
  uint64_t uniform_index(uint64_t n);

  bool bernoulli(double p) { return uniform() < p; }
  int bit() { return static_cast<int>(next_u64() >> 63); }

  // Standard normal via Box-Muller (pair cached).
  double gaussian();

  // Child stream seeded from this stream's seed and a tag/index.
  Rng derive(std::string_view tag) const { return Rng(mix(seed_, tag)); }
  Rng derive(uint64_t index) const { return Rng(mix(seed_, index)); }

  static uint64_t mix(uint64_t seed, std::string_view tag);
  static uint64_t mix(uint64_t seed, uint64_t index);

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
  bool have_cached_gaussian_ = false;
  double cached_gaussian_ = 0.0;
};

}  // namespace pufkit
