#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace pforge {

// SplitMix64 finalizer applied to (seed, stream). Used to derive independent
// child seeds so that parallel work is reproducible regardless of ordering.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Seedable, splittable generator. Distributions are implemented here rather
// than through <random> so sequences are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  // Child generator for a named sub-stream; does not advance this one.
  Rng split(std::uint64_t stream) const { return Rng(mix_seed(seed_, stream)); }

  std::uint64_t next_u64() { return engine_(); }
  double uniform();  // [0, 1)
  double uniform(double lo, double hi);
  double normal();   // standard normal
  int rademacher();  // +1 or -1 with equal probability

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

}  // namespace pforge
