// pforge: command-line front end. See README.md for the commands and file formats.

#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pforge/cli/commands.hpp"
#include "pforge/cli/config.hpp"
#include "pforge/cli/manifest.hpp"
#include "pforge/core/dataset_io.hpp"
#include "pforge/game/collect.hpp"

namespace fs = std::filesystem;
using namespace pforge;
using namespace pforge::cli;

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::optional<double> tol;
  std::optional<int> max_iters;
};

void add_common(CLI::App* cmd, Common& c, bool needs_config) {
  auto* opt = cmd->add_option("--config", c.config, "experiment config (JSON), or a manifest to replay");
  if (needs_config) opt->required();
  opt->check(CLI::ExistingFile);
  cmd->add_option("--seed", c.seed, "override the config seed");
  cmd->add_option("--out-dir", c.out_dir, "output directory (default: config output.dir)");
  cmd->add_option("--tol", c.tol, "gap tolerance tol_r; also the SPSA stop tolerance")->check(CLI::PositiveNumber);
}

ExperimentConfig load(const Common& c) {
  if (c.config.empty()) return parse_config(nlohmann::json::object());
  nlohmann::json j = read_json_file(c.config);
  if (is_manifest(j)) j = j.at("config");
  return parse_config(j);
}

RunContext context(const Common& c) {
  RunContext ctx;
  ctx.cfg = load(c);
  if (c.seed) {
    // Re-derive every seed-dependent field through the parser.
    nlohmann::json j = to_json(ctx.cfg);
    j["seed"] = *c.seed;
    ctx.cfg = parse_config(j);
  }
  if (c.tol) {
    ctx.cfg.rp.tol_r = *c.tol;
    ctx.cfg.spsa.stop_tol = *c.tol;
  }
  if (c.max_iters) {
    if (*c.max_iters < 0) throw ConfigError("--max-iters: must be >= 0");
    ctx.cfg.spsa.max_iters = *c.max_iters;
  }
  ctx.out_dir = c.out_dir.empty() ? fs::path(ctx.cfg.out_dir) : fs::path(c.out_dir);
  ctx.threads = resolve_threads(ctx.cfg.monte_carlo.parallelism);
  ctx.log = &std::cerr;
  return ctx;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Revealed-preference mechanism design workbench"};
  app.require_subcommand(1);

  std::string audit_path;
  Common audit_opts, gen_opts, spsa_opts, dro_opts, mc_opts;
  std::string dro_dataset;

  auto* audit = app.add_subcommand("audit", "test a dataset for Pareto-optimal play");
  audit->add_option("dataset", audit_path, "dataset JSON")->required()->check(CLI::ExistingFile);
  add_common(audit, audit_opts, false);

  auto* generate = app.add_subcommand("generate", "collect a river-pollution dataset");
  add_common(generate, gen_opts, false);

  auto* spsa = app.add_subcommand("spsa", "adaptive mechanism design on the river game");
  add_common(spsa, spsa_opts, false);
  spsa->add_option("--max-iters", spsa_opts.max_iters, "override spsa.max_iters");

  auto* dro = app.add_subcommand("dro", "distributionally robust Pareto gap");
  add_common(dro, dro_opts, false);
  dro->add_option("--dataset", dro_dataset, "dataset JSON instead of the generated instance")
      ->check(CLI::ExistingFile);

  auto* mc = app.add_subcommand("mc", "Monte-Carlo replication of spsa or dro");
  add_common(mc, mc_opts, false);
  mc->add_option("--max-iters", mc_opts.max_iters, "override spsa.max_iters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*audit) {
      const ExperimentConfig cfg = context(audit_opts).cfg;
      std::optional<fs::path> out;
      if (!audit_opts.out_dir.empty()) out = audit_opts.out_dir;
      return cmd_audit(audit_path, cfg.rp, out, std::cout);
    }
    if (*generate) return cmd_generate(context(gen_opts));
    if (*spsa) return cmd_spsa(context(spsa_opts));
    if (*dro) {
      std::optional<fs::path> ds;
      if (!dro_dataset.empty()) ds = dro_dataset;
      return cmd_dro(context(dro_opts), ds);
    }
    if (*mc) return cmd_mc(context(mc_opts));
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
  } catch (const game::NashFailure& e) {
    std::cerr << "equilibrium failure: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kExitError;
}
