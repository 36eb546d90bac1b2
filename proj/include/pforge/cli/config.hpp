#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pforge/dro/dro.hpp"
#include "pforge/game/collect.hpp"
#include "pforge/game/river.hpp"
#include "pforge/rp/report.hpp"
#include "pforge/spsa/spsa.hpp"

namespace pforge::cli {

// Message starts with the JSON pointer of the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GameSection {
  game::RiverParams river;
  Vec theta0 = Vec(game::RiverPollutionGame::kThetaDim, 0.5);  // mechanism used by `generate`
  double jitter = 0.0;
  std::size_t N = 1;
  std::size_t T = 10;
  game::NashOptions nash;
};

struct DROSection {
  double delta = 0.1;
  std::vector<double> epsilons{0.001, 1.0, 10.0};
  bool scaled_box = true;  // lambda in [1, 1/lambda_hat] instead of [lambda_hat, 1]
  dro::DROConfig solver;
  dro::ConsumerOptions instance;
};

struct MonteCarloSection {
  std::size_t replications = 200;
  std::uint64_t base_seed = 0;
  unsigned parallelism = 1;
  std::string command = "spsa";
};

struct ExperimentConfig {
  std::uint64_t seed = 0;
  rp::AuditOptions rp;
  GameSection game;
  spsa::SPSAConfig spsa;  // seed and T are filled from the top level and the game section
  DROSection dro;
  MonteCarloSection monte_carlo;
  std::string out_dir = "out";
};

ExperimentConfig default_config();

// Missing keys keep their defaults. Unknown keys, wrong types and out-of-range values throw
// ConfigError. The result has passed every module's own validate().
ExperimentConfig parse_config(const nlohmann::json& j);

// The full effective configuration; parse_config(to_json(c)) reproduces c.
nlohmann::json to_json(const ExperimentConfig& c);

}  // namespace pforge::cli
