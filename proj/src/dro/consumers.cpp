#include <cmath>
#include <stdexcept>

#include "pforge/core/rng.hpp"
#include "pforge/dro/dro.hpp"
#include "pforge/game/collect.hpp"

namespace pforge::dro {

RPDataset consumer_instance(const ConsumerOptions& opts) {
  if (opts.T == 0 || opts.N == 0) throw std::invalid_argument("consumer instance needs T, N >= 1");
  using game::JointAction;
  // Each consumer's utility depends on its own bundle only.
  game::FunctionGame g(2, {
      [](const JointAction& x) { return x[0][0] + x[0][1]; },
      [](const JointAction& x) { return x[1][0] + std::pow(x[1][1], 0.25); },
      [](const JointAction& x) { return std::pow(x[2][0], 0.25) + x[2][1]; },
  });
  Rng rng(opts.seed);
  ConstraintGrid probes(opts.T);
  for (auto& row : probes)
    for (int i = 0; i < 3; ++i)
      row.push_back(ConstraintFunction::affine({rng.uniform(0.1, 1.1), rng.uniform(0.1, 1.1)}, 1.0));
  game::CollectOptions co;
  co.N = opts.N;
  co.jitter = opts.jitter;
  co.seed = mix_seed(opts.seed, 1);
  return game::collect_dataset(g, probes, co);
}

}  // namespace pforge::dro
