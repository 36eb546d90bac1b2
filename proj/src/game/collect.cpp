#include "pforge/game/collect.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "pforge/core/rng.hpp"

namespace pforge::game {

NashFailure::NashFailure(std::size_t period, double residual, int iterations)
    : std::runtime_error("Nash computation failed in period " + std::to_string(period) +
                         ": residual " + std::to_string(residual) + " after " +
                         std::to_string(iterations) + " iterations"),
      period_(period),
      residual_(residual) {}

namespace {

struct PeriodOut {
  std::vector<EmpiricalStrategy> strategies;
  std::optional<NashResult> failure;
};

PeriodOut solve_period(const Game& g, const std::vector<ConstraintFunction>& row,
                       const CollectOptions& opts, Rng rng) {
  std::vector<BudgetSet> sets;
  for (const auto& f : row) sets.emplace_back(f);
  JointAction x0(g.M(), Vec(g.k(), 0.0));
  NashResult ne = relaxation_nash(g, sets, std::move(x0), opts.nash);
  PeriodOut out;
  if (!ne.converged) {
    out.failure = std::move(ne);
    return out;
  }
  for (std::size_t i = 0; i < g.M(); ++i) {
    std::vector<Vec> samples;
    for (std::size_t n = 0; n < opts.N; ++n) {
      if (opts.jitter == 0.0) {
        samples.push_back(ne.x_star[i]);
        continue;
      }
      Vec y = ne.x_star[i];
      for (double& v : y) v += rng.uniform(-opts.jitter, opts.jitter);
      samples.push_back(sets[i].project(y));
    }
    out.strategies.emplace_back(std::move(samples));
  }
  return out;
}

}  // namespace

RPDataset collect_dataset(const Game& g, const ConstraintGrid& probes, const CollectOptions& opts) {
  if (probes.empty()) throw std::invalid_argument("need probes for at least one period");
  if (opts.N == 0) throw std::invalid_argument("need at least one sample");
  if (!(opts.jitter >= 0.0)) throw std::invalid_argument("jitter must be >= 0");
  for (const auto& row : probes) {
    if (row.size() != g.M()) throw std::invalid_argument("probe row must have one entry per agent");
    for (const auto& f : row)
      if (f.dim() != g.k()) throw std::invalid_argument("probe dimension mismatch");
  }
  const std::size_t T = probes.size();
  const Rng root(opts.seed);
  std::vector<PeriodOut> outs(T);
  std::exception_ptr error;
  std::mutex error_mu;

  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t t = begin; t < T; t += step) {
      try {
        outs[t] = solve_period(g, probes[t], opts, root.split(t));
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(opts.threads, 1, T);
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  for (std::size_t t = 0; t < T; ++t)
    if (outs[t].failure) throw NashFailure(t, outs[t].failure->ni_residual, outs[t].failure->iterations);

  Grid<EmpiricalStrategy> strategies(T);
  for (std::size_t t = 0; t < T; ++t) strategies[t] = std::move(outs[t].strategies);
  return RPDataset(probes, std::move(strategies));
}

}  // namespace pforge::game
