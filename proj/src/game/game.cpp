#include "pforge/game/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace pforge::game {

FunctionGame::FunctionGame(std::size_t k, std::vector<Payoff> payoffs, Vec theta)
    : k_(k), f_(std::move(payoffs)), theta_(std::move(theta)) {
  if (k_ == 0) throw std::invalid_argument("action dimension must be >= 1");
  if (f_.empty()) throw std::invalid_argument("game needs at least one agent");
}

void check_action(const Game& g, const JointAction& x) {
  if (x.size() != g.M()) throw std::invalid_argument("joint action has wrong number of agents");
  for (const auto& xi : x) {
    if (xi.size() != g.k()) throw std::invalid_argument("action dimension mismatch");
    for (double v : xi)
      if (!(v >= 0.0)) throw std::invalid_argument("actions must be non-negative");
  }
}

double payoff(const Game& g, const JointAction& x, std::size_t i) {
  check_action(g, x);
  if (i >= g.M()) throw std::out_of_range("agent index out of range");
  return g.payoff_unchecked(x, i);
}

double nikaido_isoda(const Game& g, const JointAction& x, const JointAction& y) {
  check_action(g, x);
  check_action(g, y);
  double psi = 0.0;
  JointAction z = x;
  for (std::size_t i = 0; i < g.M(); ++i) {
    z[i] = y[i];
    psi += g.payoff_unchecked(z, i) - g.payoff_unchecked(x, i);
    z[i] = x[i];
  }
  return psi;
}

Deviation best_deviation(const Game& g, const JointAction& x, const std::vector<BudgetSet>& sets,
                         const DeviationOptions& opts) {
  check_action(g, x);
  if (sets.size() != g.M()) throw std::invalid_argument("need one budget set per agent");
  Deviation out;
  out.z = x;
  out.gains.assign(g.M(), 0.0);
  for (std::size_t i = 0; i < g.M(); ++i) {
    const BudgetSet& set = sets[i];
    if (set.dim() != g.k()) throw std::invalid_argument("budget set dimension mismatch");
    JointAction probe = x;
    const double base = g.payoff_unchecked(x, i);
    ScalarField f = [&](VecView y) {
      probe[i].assign(y.begin(), y.end());
      return g.payoff_unchecked(probe, i);
    };
    Projector proj = [&](VecView y) { return set.project(y); };

    std::vector<Vec> starts{set.project(x[i])};
    for (const Vec& v : set.vertices()) {
      starts.push_back(v);
      for (int e = 1; e <= opts.extra_starts; ++e) {
        const double w = static_cast<double>(e) / (opts.extra_starts + 1);
        Vec m(g.k());
        for (std::size_t j = 0; j < m.size(); ++j) m[j] = (1 - w) * starts.front()[j] + w * v[j];
        starts.push_back(std::move(m));
      }
    }
    AscentResult best = multistart_ascent(f, proj, starts, opts.ascent);
    // Staying put is admissible whenever x_i is feasible, so gains are never negative.
    if (best.value > base || !set.contains(x[i], kTolFeas)) {
      out.z[i] = std::move(best.x);
      out.gains[i] = std::max(0.0, best.value - base);
    }
    out.residual += out.gains[i];
  }
  return out;
}

std::string_view to_string(Schedule s) {
  switch (s) {
    case Schedule::Harmonic: return "harmonic";
    case Schedule::Constant: return "constant";
    case Schedule::LineSearch: return "line_search";
  }
  return "?";
}

Schedule schedule_from_string(std::string_view name) {
  if (name == "harmonic") return Schedule::Harmonic;
  if (name == "constant") return Schedule::Constant;
  if (name == "line_search") return Schedule::LineSearch;
  throw std::invalid_argument("unknown relaxation schedule: " + std::string(name));
}

namespace {

JointAction blend(const JointAction& x, const JointAction& z, double a) {
  JointAction out = x;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x[i].size(); ++j)
      out[i][j] = std::max(0.0, (1.0 - a) * x[i][j] + a * z[i][j]);
  return out;
}

}  // namespace

NashResult relaxation_nash(const Game& g, const std::vector<BudgetSet>& sets, JointAction x0,
                           const NashOptions& opts) {
  check_action(g, x0);
  for (std::size_t i = 0; i < g.M(); ++i)
    if (!sets.at(i).contains(x0[i], kTolFeas))
      throw std::invalid_argument("relaxation start is outside agent " + std::to_string(i) +
                                  "'s budget set");
  if (!(opts.constant_step > 0.0 && opts.constant_step <= 1.0))
    throw std::invalid_argument("constant step must lie in (0, 1]");

  NashResult res;
  res.x_star = std::move(x0);
  Deviation dev = best_deviation(g, res.x_star, sets, opts.deviation);
  res.ni_residual = dev.residual;
  for (int k = 0; k < opts.max_iters && res.ni_residual > opts.tol_ne; ++k) {
    if (opts.schedule == Schedule::LineSearch) {
      JointAction best_x;
      Deviation best_dev;
      double best = std::numeric_limits<double>::infinity();
      for (double a = 1.0; a > 1.0 / 100.0; a *= 0.5) {
        JointAction cand = blend(res.x_star, dev.z, a);
        Deviation d = best_deviation(g, cand, sets, opts.deviation);
        if (d.residual < best) {
          best = d.residual;
          best_x = std::move(cand);
          best_dev = std::move(d);
        }
      }
      res.x_star = std::move(best_x);
      dev = std::move(best_dev);
    } else {
      const double a = opts.schedule == Schedule::Harmonic ? 1.0 / (k + 1) : opts.constant_step;
      res.x_star = blend(res.x_star, dev.z, a);
      dev = best_deviation(g, res.x_star, sets, opts.deviation);
    }
    res.ni_residual = dev.residual;
    res.iterations = k + 1;
  }
  res.converged = res.ni_residual <= opts.tol_ne;
  return res;
}

}  // namespace pforge::game
