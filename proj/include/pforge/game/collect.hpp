#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "pforge/core/dataset.hpp"
#include "pforge/game/game.hpp"

namespace pforge::game {

struct CollectOptions {
  std::size_t N = 1;         // samples per (t, i)
  double jitter = 0.0;       // half-width of the uniform perturbation; 0 gives pure play
  std::uint64_t seed = 0;
  unsigned threads = 1;      // periods solved concurrently
  NashOptions nash{};
};

class NashFailure : public std::runtime_error {
 public:
  NashFailure(std::size_t period, double residual, int iterations);
  std::size_t period() const { return period_; }
  double residual() const { return residual_; }

 private:
  std::size_t period_;
  double residual_;
};

// For each period t: budget sets from probes[t], relaxation Nash from the origin, then N samples
// of NE + U(-jitter, jitter)^k projected back into the budget set. Deterministic in the seed
// whatever the thread count. Throws NashFailure for the first period that does not converge.
RPDataset collect_dataset(const Game& g, const ConstraintGrid& probes,
                          const CollectOptions& opts = {});

}  // namespace pforge::game
