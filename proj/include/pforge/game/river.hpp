#pragma once

#include <array>
#include <cstdint>

#include "pforge/core/constraint.hpp"
#include "pforge/game/game.hpp"

namespace pforge::game {

struct RiverParams {
  double d1 = 3.0;  // demand intercept; keeps marginal profit positive on the feasible region
  // delta[i][l]: transport-decay from firm i to monitoring station l.
  std::array<std::array<double, 2>, 3> delta{{{0.8, 0.4}, {0.6, 0.7}, {0.3, 0.9}}};
  double cap = 100.0;  // pollution cap per station
};

// Three firms on a river. theta = [d2, c11, c12, c13, c21, c22, c23];
//   f^i(x) = d1 x_i - d2 sqrt(x1 + x2 + x3) - c1i sqrt(x_i) - c2i x_i.
// theta may leave [0,1]^7 (perturbed SPSA points are evaluated as-is).
class RiverPollutionGame : public Game {
 public:
  static constexpr std::size_t kThetaDim = 7;

  RiverPollutionGame(RiverParams params, Vec theta);

  std::size_t M() const override { return 3; }
  std::size_t k() const override { return 1; }
  Vec theta() const override { return theta_; }
  double payoff_unchecked(const JointAction& x, std::size_t i) const override;

  const RiverParams& params() const { return params_; }
  // Station loads q_l(x) = sum_i delta_il e_i x_i.
  std::array<double, 2> station_loads(const JointAction& x, const std::array<double, 3>& e) const;

 private:
  RiverParams params_;
  Vec theta_;
};

// Separable per-firm budget g^i(x_i) = (max_l delta_il) e_i x_i - cap: each firm is charged
// its worst-station load, which implies every joint station constraint.
ConstraintFunction river_probe(const RiverParams& p, std::size_t firm, double emission);

// One probe row per period with e ~ U(0,1]^3 drawn fresh each period.
ConstraintGrid river_probes(const RiverParams& p, std::size_t T, std::uint64_t seed);

// f^i(x) = a_i x_i - x_i^2 / 2 + b_i x_i x_j on R_+, two players. For |b1 b2| < 1 and a
// non-negative solution the equilibrium is x1 = (a1 + b1 a2) / (1 - b1 b2) and symmetric.
class QuadraticGame : public Game {
 public:
  QuadraticGame(std::array<double, 2> a, std::array<double, 2> b);

  std::size_t M() const override { return 2; }
  std::size_t k() const override { return 1; }
  Vec theta() const override { return {a_[0], a_[1], b_[0], b_[1]}; }
  double payoff_unchecked(const JointAction& x, std::size_t i) const override;

  std::array<double, 2> closed_form_equilibrium() const;

 private:
  std::array<double, 2> a_, b_;
};

}  // namespace pforge::game
