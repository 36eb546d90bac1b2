#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "pforge/cli/config.hpp"

namespace pforge::cli {

inline constexpr int kExitOk = 0;        // success, or the data are consistent
inline constexpr int kExitNegative = 1;  // ran fine, answer is negative
inline constexpr int kExitError = 2;

// PARETO_FORGE_THREADS if set, otherwise `configured`. Throws ConfigError on a bad value.
unsigned resolve_threads(unsigned configured);

struct RunContext {
  ExperimentConfig cfg;
  std::filesystem::path out_dir;
  unsigned threads = 1;
  std::ostream* log = nullptr;  // progress lines; null for silence
};

// Report JSON to `out` (and to out_dir/audit.json when given). 0 if gap <= tol_r, else 1.
int cmd_audit(const std::filesystem::path& dataset, const rp::AuditOptions& opts,
              const std::optional<std::filesystem::path>& out_dir, std::ostream& out);

// dataset.json from the river game at game.theta0.
int cmd_generate(const RunContext& ctx);
// spsa_trace.csv; 1 if stop_tol was never reached.
int cmd_spsa(const RunContext& ctx);
// Exchange method on the three-consumer instance (or on `dataset`) for every configured radius;
// dro_trace_eps<eps>.csv and dro_result.json. 1 if some radius ended uncertified.
int cmd_dro(const RunContext& ctx, const std::optional<std::filesystem::path>& dataset);
// Replications of spsa or dro with aggregate CSVs.
int cmd_mc(const RunContext& ctx);

}  // namespace pforge::cli
