#include "pforge/spsa/spsa.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <ostream>
#include <stdexcept>
#include <string>

#include "pforge/core/rng.hpp"
#include "pforge/rp/afriat.hpp"

namespace pforge::spsa {

void SPSAConfig::validate() const {
  auto bad = [](const std::string& what) { throw std::invalid_argument("spsa config: " + what); };
  if (!(a > 0.0)) bad("a must be > 0");
  if (!(c > 0.0)) bad("c must be > 0");
  if (!(q >= 0.0)) bad("q must be >= 0");
  if (!(eta >= 1.0 / 6.0 && eta <= 0.5)) bad("eta must lie in [1/6, 1/2]");
  if (box_lo.empty() || box_lo.size() != box_hi.size()) bad("theta box is empty or ragged");
  for (std::size_t j = 0; j < box_lo.size(); ++j)
    if (!(box_lo[j] <= box_hi[j])) bad("theta box has lo > hi at coordinate " + std::to_string(j));
  if (theta0) {
    if (theta0->size() != dim()) bad("theta0 has the wrong dimension");
    for (std::size_t j = 0; j < dim(); ++j)
      if (!((*theta0)[j] >= box_lo[j] && (*theta0)[j] <= box_hi[j])) bad("theta0 lies outside the box");
  } else {
    if (init_lo.size() != dim() || init_hi.size() != dim()) bad("initial box has the wrong dimension");
    for (std::size_t j = 0; j < dim(); ++j)
      if (!(init_lo[j] <= init_hi[j] && init_lo[j] >= box_lo[j] && init_hi[j] <= box_hi[j]))
        bad("initial box must lie inside the theta box");
  }
  if (T == 0) bad("T must be >= 1");
  if (max_iters < 0) bad("max_iters must be >= 0");
  if (!(stop_tol >= 0.0)) bad("stop_tol must be >= 0");
  if (!(alpha > 0.0)) bad("alpha must be > 0");
}

Gains gains(int n, const SPSAConfig& cfg) {
  if (n < 1) throw std::invalid_argument("iteration index starts at 1");
  const double m = n + 3.0;
  return {cfg.a / n, cfg.c / std::pow(static_cast<double>(n), cfg.eta),
          std::sqrt(cfg.q / (m * std::log(std::log(m))))};
}

Vec project_box(Vec theta, const Vec& lo, const Vec& hi) {
  for (std::size_t j = 0; j < theta.size(); ++j) theta[j] = std::clamp(theta[j], lo[j], hi[j]);
  return theta;
}

StepResult spsa_step(const Vec& theta, const Loss& loss_plus, const Loss& loss_minus, int n,
                     const SPSAConfig& cfg, std::uint64_t seed) {
  const std::size_t p = theta.size();
  if (p != cfg.dim()) throw std::invalid_argument("theta has the wrong dimension");
  StepResult out;
  out.gains = gains(n, cfg);
  Rng rng(seed);
  Vec delta(p), w(p);
  for (double& d : delta) d = rng.rademacher();
  for (double& v : w) v = rng.normal();

  Vec plus = theta, minus = theta;
  for (std::size_t j = 0; j < p; ++j) {
    plus[j] += out.gains.c * delta[j];
    minus[j] -= out.gains.c * delta[j];
  }
  if (cfg.parallel_pair) {
    auto fut = std::async(std::launch::async, [&] { return loss_minus(minus); });
    out.loss_plus = loss_plus(plus);
    out.loss_minus = fut.get();
  } else {
    out.loss_plus = loss_plus(plus);
    out.loss_minus = loss_minus(minus);
  }

  out.gradient.resize(p);
  Vec next(p);
  for (std::size_t j = 0; j < p; ++j) {
    out.gradient[j] = (out.loss_plus - out.loss_minus) / (2.0 * out.gains.c * delta[j]);
    next[j] = theta[j] - out.gains.a * out.gradient[j] + out.gains.q * w[j];
  }
  out.theta_next = project_box(std::move(next), cfg.box_lo, cfg.box_hi);
  return out;
}

namespace {

// Streams: 0 = initial theta; per iteration n: 0 = step noise, 1..3 = probes for
// theta_n, theta + c Delta, theta - c Delta; attempts split further.
double evaluate(const MechanismLoss& loss, const Vec& theta, const Rng& stream, int& retries) {
  for (int attempt = 0;; ++attempt) {
    try {
      return loss(theta, stream.split(attempt).seed());
    } catch (const game::NashFailure&) {
      if (attempt + 1 >= kNashRetries) throw;
      ++retries;
    }
  }
}

}  // namespace

RunResult run_mechanism_design(const MechanismLoss& loss, const SPSAConfig& cfg,
                               const RecordSink& sink) {
  cfg.validate();
  const Rng root(cfg.seed);
  Vec theta;
  if (cfg.theta0) {
    theta = *cfg.theta0;
  } else {
    Rng init = root.split(0);
    for (std::size_t j = 0; j < cfg.dim(); ++j) theta.push_back(init.uniform(cfg.init_lo[j], cfg.init_hi[j]));
  }

  RunResult run;
  for (int n = 1; n <= cfg.max_iters; ++n) {
    const Rng it = root.split(static_cast<std::uint64_t>(n));
    StepRecord rec;
    rec.n = n;
    rec.theta = theta;
    rec.gains = gains(n, cfg);
    rec.loss = evaluate(loss, theta, it.split(1), run.nash_retries);
    if (rec.loss <= cfg.stop_tol) {
      run.reached_at = n;
      if (sink) sink(rec);
      run.trace.push_back(std::move(rec));
      break;
    }
    int retries = 0;
    const Loss plus = [&](const Vec& th) { return evaluate(loss, th, it.split(2), retries); };
    const Loss minus = [&](const Vec& th) { return evaluate(loss, th, it.split(3), retries); };
    StepResult step = spsa_step(theta, plus, minus, n, cfg, it.split(0).seed());
    run.nash_retries += retries;
    rec.gradient = std::move(step.gradient);
    if (sink) sink(rec);
    run.trace.push_back(std::move(rec));
    theta = std::move(step.theta_next);
  }
  return run;
}

MechanismLoss river_loss(const game::RiverParams& params, std::size_t T,
                         const game::CollectOptions& collect, double alpha) {
  return [=](const Vec& theta, std::uint64_t probe_seed) {
    game::RiverPollutionGame g(params, theta);
    game::CollectOptions opts = collect;
    opts.seed = mix_seed(probe_seed, 1);
    const auto d = game::collect_dataset(g, game::river_probes(params, T, probe_seed), opts);
    return rp::empirical_pareto_gap(d, alpha).gap;
  };
}

void write_trace_header(std::ostream& os, std::size_t p) {
  os << "n,loss";
  for (std::size_t j = 1; j <= p; ++j) os << ",theta_" << j;
  os << ",a_n,c_n,q_n\n";
}

namespace {
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace

void write_trace_row(std::ostream& os, const StepRecord& r) {
  os << r.n << ',' << num(r.loss);
  for (double v : r.theta) os << ',' << num(v);
  os << ',' << num(r.gains.a) << ',' << num(r.gains.c) << ',' << num(r.gains.q) << '\n';
}

std::vector<AggregateRow> aggregate(const std::vector<RunResult>& runs, int max_iters) {
  std::vector<AggregateRow> rows;
  if (runs.empty()) return rows;
  for (int n = 1; n <= max_iters; ++n) {
    double sum = 0.0, sq = 0.0, reached = 0.0;
    std::size_t count = 0;
    for (const auto& r : runs) {
      if (r.trace.empty()) continue;
      const std::size_t idx = std::min<std::size_t>(n, r.trace.size()) - 1;
      const double l = r.trace[idx].loss;
      sum += l;
      sq += l * l;
      ++count;
      if (r.reached() && r.reached_at <= n) reached += 1.0;
    }
    if (count == 0) break;
    const double mean = sum / count;
    rows.push_back({n, mean, std::sqrt(std::max(0.0, sq / count - mean * mean)),
                    reached / static_cast<double>(runs.size())});
  }
  return rows;
}

void write_aggregate_csv(std::ostream& os, const std::vector<AggregateRow>& rows) {
  os << "n,mean_loss,std_loss,frac_reached\n";
  for (const auto& r : rows)
    os << r.n << ',' << num(r.mean) << ',' << num(r.stddev) << ',' << num(r.frac_reached) << '\n';
}

}  // namespace pforge::spsa
