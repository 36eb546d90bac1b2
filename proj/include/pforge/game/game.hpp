#pragma once

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "pforge/core/budget_set.hpp"
#include "pforge/core/constraint.hpp"
#include "pforge/core/tolerances.hpp"

namespace pforge::game {

using JointAction = std::vector<Vec>;  // [agent] -> own action in R^k_+

// A concave game seen as a black box: M agents, k-dimensional actions, one payoff per agent.
class Game {
 public:
  virtual ~Game() = default;
  virtual std::size_t M() const = 0;
  virtual std::size_t k() const = 0;
  virtual Vec theta() const = 0;
  // x is already validated (M blocks of size k, non-negative).
  virtual double payoff_unchecked(const JointAction& x, std::size_t i) const = 0;
};

// Payoffs given as plain callables; handy for tests and one-off games.
class FunctionGame : public Game {
 public:
  using Payoff = std::function<double(const JointAction&)>;
  FunctionGame(std::size_t k, std::vector<Payoff> payoffs, Vec theta = {});

  std::size_t M() const override { return f_.size(); }
  std::size_t k() const override { return k_; }
  Vec theta() const override { return theta_; }
  double payoff_unchecked(const JointAction& x, std::size_t i) const override { return f_[i](x); }

 private:
  std::size_t k_;
  std::vector<Payoff> f_;
  Vec theta_;
};

// Throws std::invalid_argument on a wrong shape or a negative coordinate.
void check_action(const Game& g, const JointAction& x);
double payoff(const Game& g, const JointAction& x, std::size_t i);

// Psi(x, y) = sum_i [f^i(y_i, x_-i) - f^i(x)].
double nikaido_isoda(const Game& g, const JointAction& x, const JointAction& y);

struct DeviationOptions {
  AscentOptions ascent{};
  // Extra starts along the segment from the own action to each budget vertex.
  int extra_starts = 2;
};

struct Deviation {
  JointAction z;
  std::vector<double> gains;  // f^i(z_i, x_-i) - f^i(x) >= 0
  double residual = 0.0;      // sum of gains = max_y Psi(x, y)
};

// Z(x): each agent's best reply to x_-i over its own budget set.
Deviation best_deviation(const Game& g, const JointAction& x,
                         const std::vector<BudgetSet>& sets, const DeviationOptions& opts = {});

enum class Schedule { Harmonic, Constant, LineSearch };
std::string_view to_string(Schedule s);
Schedule schedule_from_string(std::string_view name);

struct NashOptions {
  Schedule schedule = Schedule::Harmonic;
  double constant_step = 0.5;  // Constant schedule only
  int max_iters = 500;
  double tol_ne = kTolNe;
  DeviationOptions deviation{};
};

struct NashResult {
  JointAction x_star;
  double ni_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Relaxation x_{k+1} = (1 - a_k) x_k + a_k Z(x_k), a_k = 1/(k+1) by default, stopping once
// max_y Psi(x_k, y) <= tol_ne. Never throws on non-convergence; check `converged`.
NashResult relaxation_nash(const Game& g, const std::vector<BudgetSet>& sets, JointAction x0,
                           const NashOptions& opts = {});

}  // namespace pforge::game
