#include "pforge/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "pforge/cli/manifest.hpp"
#include "pforge/core/dataset_io.hpp"
#include "pforge/core/rng.hpp"
#include "pforge/dro/dro.hpp"
#include "pforge/game/collect.hpp"
#include "pforge/game/river.hpp"
#include "pforge/rp/report.hpp"
#include "pforge/spsa/spsa.hpp"

namespace pforge::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ofstream open_out(const fs::path& p) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  return os;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string eps_tag(double eps) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", eps);
  return buf;
}

void say(const RunContext& ctx, const std::string& line) {
  if (ctx.log) *ctx.log << line << '\n' << std::flush;
}

void finish(const RunContext& ctx, Manifest m) {
  m.seed = ctx.cfg.seed;
  m.config = to_json(ctx.cfg);
  write_json_file(manifest_json(m), ctx.out_dir / "manifest.json");
}

game::CollectOptions collect_options(const RunContext& ctx) {
  game::CollectOptions co;
  co.N = ctx.cfg.game.N;
  co.jitter = ctx.cfg.game.jitter;
  co.seed = ctx.cfg.seed;
  co.threads = ctx.threads;
  co.nash = ctx.cfg.game.nash;
  return co;
}

// Runs body(r) for r in [0, n) on up to `threads` workers; results are indexed by r.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F body) {
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  auto work = [&] {
    for (std::size_t r; (r = next++) < n;) {
      try {
        body(r);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

json psi_json(const dro::PsiVector& p) { return {{"u", p.u}, {"lambda", p.lambda}}; }

void write_dro_trace(const fs::path& path, const std::vector<dro::TraceRow>& rows) {
  auto os = open_out(path);
  os << "iter,max_cv,master_objective,n_cuts_total\n";
  for (const auto& r : rows)
    os << r.iter << ',' << fmt(r.max_cv) << ',' << fmt(r.master_objective) << ',' << r.n_cuts_total << '\n';
}

spsa::RunResult run_spsa(const ExperimentConfig& cfg, std::uint64_t seed, unsigned threads,
                         const spsa::RecordSink& sink) {
  spsa::SPSAConfig sc = cfg.spsa;
  sc.seed = seed;
  game::CollectOptions co;
  co.N = cfg.game.N;
  co.jitter = cfg.game.jitter;
  co.threads = threads;
  co.nash = cfg.game.nash;
  return spsa::run_mechanism_design(spsa::river_loss(cfg.game.river, cfg.game.T, co, cfg.rp.alpha), sc,
                                    sink);
}

}  // namespace

unsigned resolve_threads(unsigned configured) {
  const char* env = std::getenv("PARETO_FORGE_THREADS");
  if (!env || !*env) return configured;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 4096)
    throw ConfigError("PARETO_FORGE_THREADS: expected a positive integer, got '" + std::string(env) + "'");
  return static_cast<unsigned>(v);
}

int cmd_audit(const fs::path& dataset, const rp::AuditOptions& opts,
              const std::optional<fs::path>& out_dir, std::ostream& out) {
  const RPDataset d = read_dataset(dataset);
  const json report = rp::audit_report(d, opts);
  out << report.dump(2) << '\n';
  if (out_dir) {
    fs::create_directories(*out_dir);
    write_json_file(report, *out_dir / "audit.json");
  }
  return report.at("consistent").get<bool>() ? kExitOk : kExitNegative;
}

int cmd_generate(const RunContext& ctx) {
  fs::create_directories(ctx.out_dir);
  const auto& g = ctx.cfg.game;
  const game::RiverPollutionGame river(g.river, g.theta0);
  const auto probes = game::river_probes(g.river, g.T, ctx.cfg.seed);
  const RPDataset d = game::collect_dataset(river, probes, collect_options(ctx));
  const fs::path path = ctx.out_dir / "dataset.json";
  write_dataset(d, path);
  say(ctx, "wrote " + path.string());
  finish(ctx, {"generate", 0, {}, {}, {path}, {{"T", d.T()}, {"M", d.M()}, {"N", g.N}}});
  return kExitOk;
}

int cmd_spsa(const RunContext& ctx) {
  fs::create_directories(ctx.out_dir);
  const fs::path path = ctx.out_dir / "spsa_trace.csv";
  auto os = open_out(path);
  spsa::write_trace_header(os, ctx.cfg.spsa.dim());
  const auto res = run_spsa(ctx.cfg, ctx.cfg.seed, ctx.threads, [&](const spsa::StepRecord& r) {
    spsa::write_trace_row(os, r);
    os.flush();
    say(ctx, "n=" + std::to_string(r.n) + " loss=" + fmt(r.loss));
  });
  os.close();
  json summary = {{"reached_at", res.reached_at}, {"nash_retries", res.nash_retries}};
  if (!res.trace.empty()) {
    summary["final_loss"] = res.trace.back().loss;
    summary["final_theta"] = res.trace.back().theta;
  }
  finish(ctx, {"spsa", 0, {}, {}, {path}, summary});
  return res.reached() || ctx.cfg.spsa.max_iters == 0 ? kExitOk : kExitNegative;
}

int cmd_dro(const RunContext& ctx, const std::optional<fs::path>& dataset) {
  fs::create_directories(ctx.out_dir);
  const auto& c = ctx.cfg.dro;
  const RPDataset d = dataset ? read_dataset(*dataset) : dro::consumer_instance(c.instance);
  dro::DROConfig solver = c.solver;
  solver.threads = ctx.threads;
  std::vector<fs::path> outputs;
  json results = json::array();
  bool all_certified = true;
  for (double eps : c.epsilons) {
    const auto res = dro::exchange_loop(d, eps, c.delta, solver);
    const fs::path trace = ctx.out_dir / ("dro_trace_eps" + eps_tag(eps) + ".csv");
    write_dro_trace(trace, res.trace);
    outputs.push_back(trace);
    const double gap = dro::robust_gap(res.state.psi_hat, d, eps, solver);
    all_certified = all_certified && res.state.certified;
    results.push_back({{"epsilon", eps},
                       {"delta", c.delta},
                       {"psi_hat", psi_json(res.state.psi_hat)},
                       {"v_hat", res.state.v_hat},
                       {"robust_gap", gap},
                       {"master_objective", res.state.master_objective},
                       {"certified", res.state.certified},
                       {"iterations", res.state.iteration}});
    say(ctx, "eps=" + eps_tag(eps) + " iterations=" + std::to_string(res.state.iteration) +
                 (res.state.certified ? " certified" : " NOT certified") + " robust_gap=" + fmt(gap));
  }
  const fs::path result = ctx.out_dir / "dro_result.json";
  write_json_file(results, result);
  outputs.push_back(result);
  Manifest m{"dro", 0, {}, {}, outputs, {{"certified", all_certified}}};
  if (dataset) m.inputs.push_back(*dataset);
  finish(ctx, m);
  return all_certified ? kExitOk : kExitNegative;
}

int cmd_mc(const RunContext& ctx) {
  fs::create_directories(ctx.out_dir);
  const auto& mc = ctx.cfg.monte_carlo;
  const std::size_t R = mc.replications;
  std::mutex log_mu;
  auto progress = [&](std::size_t r) {
    std::lock_guard lock(log_mu);
    say(ctx, "replication " + std::to_string(r + 1) + "/" + std::to_string(R) + " done");
  };

  if (mc.command == "spsa") {
    std::vector<spsa::RunResult> runs(R);
    parallel_for(R, ctx.threads, [&](std::size_t r) {
      runs[r] = run_spsa(ctx.cfg, mix_seed(mc.base_seed, r), 1, {});
      progress(r);
    });
    const fs::path agg = ctx.out_dir / "mc_spsa_aggregate.csv", per = ctx.out_dir / "mc_spsa_runs.csv";
    {
      auto os = open_out(agg);
      spsa::write_aggregate_csv(os, spsa::aggregate(runs, ctx.cfg.spsa.max_iters));
    }
    std::size_t reached = 0;
    {
      auto os = open_out(per);
      os << "replication,seed,reached_at,final_loss,nash_retries\n";
      for (std::size_t r = 0; r < R; ++r) {
        const auto& run = runs[r];
        reached += run.reached();
        os << r << ',' << mix_seed(mc.base_seed, r) << ',' << run.reached_at << ','
           << (run.trace.empty() ? std::string("nan") : fmt(run.trace.back().loss)) << ','
           << run.nash_retries << '\n';
      }
    }
    finish(ctx, {"mc", 0, {}, {}, {agg, per},
                 {{"replications", R}, {"frac_reached", static_cast<double>(reached) / R}}});
    return kExitOk;
  }

  // dro: every replication draws its own three-consumer instance and runs every radius on it.
  const auto& c = ctx.cfg.dro;
  const std::size_t E = c.epsilons.size();
  std::vector<std::vector<dro::ExchangeResult>> runs(R, std::vector<dro::ExchangeResult>(E));
  std::vector<std::vector<double>> gaps(R, std::vector<double>(E));
  parallel_for(R, ctx.threads, [&](std::size_t r) {
    dro::ConsumerOptions inst = c.instance;
    inst.seed = mix_seed(mc.base_seed, r);
    const RPDataset d = dro::consumer_instance(inst);
    dro::DROConfig solver = c.solver;
    solver.seed = inst.seed;
    solver.threads = 1;
    for (std::size_t e = 0; e < E; ++e) {
      runs[r][e] = dro::exchange_loop(d, c.epsilons[e], c.delta, solver);
      gaps[r][e] = dro::robust_gap(runs[r][e].state.psi_hat, d, c.epsilons[e], solver);
    }
    progress(r);
  });

  const fs::path per = ctx.out_dir / "mc_dro_runs.csv", curve = ctx.out_dir / "mc_dro_curve.csv";
  json mean_iters = json::object();
  {
    auto os = open_out(per);
    os << "replication,seed,epsilon,iterations,certified,robust_gap\n";
    for (std::size_t r = 0; r < R; ++r)
      for (std::size_t e = 0; e < E; ++e) {
        const auto& s = runs[r][e].state;
        os << r << ',' << mix_seed(mc.base_seed, r) << ',' << fmt(c.epsilons[e]) << ',' << s.iteration << ','
           << (s.certified ? 1 : 0) << ',' << fmt(gaps[r][e]) << '\n';
      }
  }
  {
    // Mean max-CV per iteration; a finished run carries its last value forward.
    auto os = open_out(curve);
    os << "epsilon,iter,mean_max_cv,frac_certified\n";
    for (std::size_t e = 0; e < E; ++e) {
      std::size_t longest = 0;
      double iters = 0.0;
      for (std::size_t r = 0; r < R; ++r) {
        longest = std::max(longest, runs[r][e].trace.size());
        iters += runs[r][e].state.iteration;
      }
      mean_iters[eps_tag(c.epsilons[e])] = iters / R;
      for (std::size_t j = 0; j < longest; ++j) {
        double sum = 0.0;
        std::size_t done = 0;
        for (std::size_t r = 0; r < R; ++r) {
          const auto& tr = runs[r][e].trace;
          sum += tr[std::min(j, tr.size() - 1)].max_cv;
          done += j + 1 >= tr.size() && runs[r][e].state.certified;
        }
        os << fmt(c.epsilons[e]) << ',' << j + 1 << ',' << fmt(sum / R) << ','
           << fmt(static_cast<double>(done) / R) << '\n';
      }
    }
  }
  finish(ctx, {"mc", 0, {}, {}, {per, curve}, {{"replications", R}, {"mean_iterations", mean_iters}}});
  return kExitOk;
}

}  // namespace pforge::cli
