#include "pforge/game/river.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pforge/core/rng.hpp"

namespace pforge::game {

RiverPollutionGame::RiverPollutionGame(RiverParams params, Vec theta)
    : params_(params), theta_(std::move(theta)) {
  if (theta_.size() != kThetaDim) throw std::invalid_argument("river theta must have 7 entries");
  for (double v : theta_)
    if (!std::isfinite(v)) throw std::invalid_argument("river theta must be finite");
  if (!(params_.cap > 0.0)) throw std::invalid_argument("pollution cap must be positive");
  for (const auto& row : params_.delta)
    for (double v : row)
      if (!(v > 0.0 && v <= 1.0)) throw std::invalid_argument("delta entries must lie in (0, 1]");
}

double RiverPollutionGame::payoff_unchecked(const JointAction& x, std::size_t i) const {
  const double xi = x[i][0];
  const double total = x[0][0] + x[1][0] + x[2][0];
  const double d2 = theta_[0], c1 = theta_[1 + i], c2 = theta_[4 + i];
  return params_.d1 * xi - d2 * std::sqrt(total) - c1 * std::sqrt(xi) - c2 * xi;
}

std::array<double, 2> RiverPollutionGame::station_loads(const JointAction& x,
                                                       const std::array<double, 3>& e) const {
  std::array<double, 2> q{0.0, 0.0};
  for (std::size_t l = 0; l < 2; ++l)
    for (std::size_t i = 0; i < 3; ++i) q[l] += params_.delta[i][l] * e[i] * x[i][0];
  return q;
}

ConstraintFunction river_probe(const RiverParams& p, std::size_t firm, double emission) {
  if (firm >= 3) throw std::out_of_range("firm index out of range");
  if (!(emission > 0.0)) throw std::invalid_argument("emission coefficient must be positive");
  const double worst = std::max(p.delta[firm][0], p.delta[firm][1]);
  return ConstraintFunction::affine({worst * emission}, p.cap);
}

ConstraintGrid river_probes(const RiverParams& p, std::size_t T, std::uint64_t seed) {
  if (T == 0) throw std::invalid_argument("need at least one period");
  Rng rng(seed);
  ConstraintGrid grid(T);
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t i = 0; i < 3; ++i) grid[t].push_back(river_probe(p, i, 1.0 - rng.uniform()));
  return grid;
}

QuadraticGame::QuadraticGame(std::array<double, 2> a, std::array<double, 2> b) : a_(a), b_(b) {}

double QuadraticGame::payoff_unchecked(const JointAction& x, std::size_t i) const {
  const double xi = x[i][0], xj = x[1 - i][0];
  return a_[i] * xi - 0.5 * xi * xi + b_[i] * xi * xj;
}

std::array<double, 2> QuadraticGame::closed_form_equilibrium() const {
  const double det = 1.0 - b_[0] * b_[1];
  if (!(std::abs(det) > 1e-12)) throw std::domain_error("degenerate quadratic game");
  return {(a_[0] + b_[0] * a_[1]) / det, (a_[1] + b_[1] * a_[0]) / det};
}

}  // namespace pforge::game
