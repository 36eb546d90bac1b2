#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "pforge/core/constraint.hpp"
#include "pforge/core/tolerances.hpp"
#include "pforge/game/collect.hpp"
#include "pforge/game/river.hpp"

namespace pforge::spsa {

struct SPSAConfig {
  double a = 0.5;
  double c = 0.5;
  double q = 0.001;
  double eta = 0.25;
  Vec box_lo;               // theta box, per coordinate
  Vec box_hi;
  std::optional<Vec> theta0;  // if unset, drawn uniformly from [init_lo, init_hi]
  Vec init_lo;
  Vec init_hi;
  std::size_t T = 10;        // probe periods per loss evaluation
  int max_iters = 30;
  double stop_tol = kTolR;
  double alpha = kDefaultAlpha;
  std::uint64_t seed = 0;
  bool parallel_pair = false;  // evaluate L(theta +- c_n Delta_n) on two threads

  std::size_t dim() const { return box_lo.size(); }
  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct Gains {
  double a = 0.0, c = 0.0, q = 0.0;
};

// a_n = a/n, c_n = c/n^eta, q_n = sqrt(q / (m ln ln m)) with m = n + 3 so that ln ln m > 0.
Gains gains(int n, const SPSAConfig& cfg);

Vec project_box(Vec theta, const Vec& lo, const Vec& hi);

struct StepRecord {
  int n = 0;
  Vec theta;          // theta_n
  double loss = 0.0;  // L(theta_n)
  Vec gradient;       // empty when the run stopped at theta_n
  Gains gains;
};

using Trace = std::vector<StepRecord>;

using Loss = std::function<double(const Vec&)>;

struct StepResult {
  Vec theta_next;
  Vec gradient;
  Gains gains;
  double loss_plus = 0.0, loss_minus = 0.0;
};

// One iteration of the update theta - a_n g_n + q_n w_n, clamped to the box. The two
// perturbed points are evaluated unprojected. Exceptions from `loss` propagate untouched.
StepResult spsa_step(const Vec& theta, const Loss& loss_plus, const Loss& loss_minus, int n,
                     const SPSAConfig& cfg, std::uint64_t seed);
inline StepResult spsa_step(const Vec& theta, const Loss& loss, int n, const SPSAConfig& cfg,
                            std::uint64_t seed) {
  return spsa_step(theta, loss, loss, n, cfg, seed);
}

// Loss of a mechanism: theta and a probe seed -> empirical Pareto gap. May throw
// game::NashFailure, which triggers a retry with a fresh probe seed.
using MechanismLoss = std::function<double(const Vec& theta, std::uint64_t probe_seed)>;

constexpr int kNashRetries = 3;

struct RunResult {
  Trace trace;
  int reached_at = 0;  // first n with L(theta_n) <= stop_tol, 0 if never
  int nash_retries = 0;
  bool reached() const { return reached_at > 0; }
};

using RecordSink = std::function<void(const StepRecord&)>;

// Evaluates L(theta_n), stops once it is <= stop_tol, otherwise takes an SPSA step;
// at most max_iters evaluations. Bit-reproducible given (cfg, loss).
RunResult run_mechanism_design(const MechanismLoss& loss, const SPSAConfig& cfg,
                               const RecordSink& sink = {});

// L(theta) for the river game: river probes for T periods, equilibrium play, empirical gap.
MechanismLoss river_loss(const game::RiverParams& params, std::size_t T,
                         const game::CollectOptions& collect, double alpha = kDefaultAlpha);

// `n,loss,theta_1..theta_p,a_n,c_n,q_n`
void write_trace_header(std::ostream& os, std::size_t p);
void write_trace_row(std::ostream& os, const StepRecord& r);

struct AggregateRow {
  int n = 0;
  double mean = 0.0;
  double stddev = 0.0;      // population
  double frac_reached = 0.0;  // share of runs with L(theta_m) <= stop_tol for some m <= n
};

// Per-iteration loss statistics; a run that stopped early carries its last loss forward.
std::vector<AggregateRow> aggregate(const std::vector<RunResult>& runs, int max_iters);
void write_aggregate_csv(std::ostream& os, const std::vector<AggregateRow>& rows);

}  // namespace pforge::spsa
