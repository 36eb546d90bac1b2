#include <gtest/gtest.h>

#include <cmath>

#include "pforge/game/collect.hpp"
#include "pforge/game/game.hpp"
#include "pforge/game/river.hpp"
#include "pforge/rp/afriat.hpp"

using namespace pforge;
using namespace pforge::game;

namespace {

const Vec kTheta{0.5, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6};

JointAction joint(std::initializer_list<double> v) {
  JointAction x;
  for (double d : v) x.push_back({d});
  return x;
}

std::vector<BudgetSet> boxes(std::size_t M, double hi) {
  return std::vector<BudgetSet>(M, BudgetSet({1.0}, hi));
}

}  // namespace

TEST(Payoff, ZeroActionGivesZero) {
  RiverPollutionGame g({}, kTheta);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(payoff(g, joint({0, 0, 0}), i), 0.0);
}

TEST(Payoff, LinearTermOnly) {
  RiverParams p;
  p.d1 = 1.0;
  RiverPollutionGame g(p, Vec(7, 0.0));
  EXPECT_DOUBLE_EQ(payoff(g, joint({2, 0, 0}), 0), 2.0);
}

TEST(Payoff, HandValuesAtOnes) {
  RiverPollutionGame g({}, kTheta);
  const auto x = joint({1, 1, 1});
  EXPECT_NEAR(payoff(g, x, 0), 1.633974596215561, 1e-12);
  EXPECT_NEAR(payoff(g, x, 1), 1.433974596215561, 1e-12);
  EXPECT_NEAR(payoff(g, x, 2), 1.233974596215561, 1e-12);
}

TEST(Payoff, RejectsNegativeAndMisshaped) {
  RiverPollutionGame g({}, kTheta);
  EXPECT_THROW(payoff(g, joint({-1, 0, 0}), 0), std::invalid_argument);
  EXPECT_THROW(payoff(g, joint({1, 0}), 0), std::invalid_argument);
  EXPECT_THROW(RiverPollutionGame({}, Vec(6, 0.0)), std::invalid_argument);
}

TEST(Payoff, LowerCostsNeverHurt) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    Vec th(7);
    for (double& v : th) v = rng.uniform();
    const auto x = joint({rng.uniform(0, 50), rng.uniform(0, 50), rng.uniform(0, 50)});
    const std::size_t i = trial % 3;
    Vec lower = th;
    lower[1 + i] *= 0.5;
    lower[4 + i] *= 0.5;
    EXPECT_GE(payoff(RiverPollutionGame({}, lower), x, i), payoff(RiverPollutionGame({}, th), x, i));
  }
}

TEST(NikaidoIsoda, DiagonalIsZero) {
  RiverPollutionGame g({}, kTheta);
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = joint({rng.uniform(0, 9), rng.uniform(0, 9), rng.uniform(0, 9)});
    EXPECT_EQ(nikaido_isoda(g, x, x), 0.0);
  }
}

TEST(NikaidoIsoda, SingleAgentIsPayoffDifference) {
  FunctionGame g(1, {[](const JointAction& x) { return std::log1p(x[0][0]); }});
  EXPECT_DOUBLE_EQ(nikaido_isoda(g, joint({1}), joint({3})), std::log1p(3.0) - std::log1p(1.0));
}

TEST(BestDeviation, OneDimensionalQuadratic) {
  FunctionGame g(1, {[](const JointAction& x) { return -(x[0][0] - 0.7) * (x[0][0] - 0.7); }});
  const auto dev = best_deviation(g, joint({0}), boxes(1, 2.0));
  EXPECT_NEAR(dev.z[0][0], 0.7, 1e-6);
  EXPECT_NEAR(dev.gains[0], 0.49, 1e-9);
}

TEST(BestDeviation, MonotonePayoffEndsOnBudgetBoundary) {
  FunctionGame g(2, {[](const JointAction& x) { return std::sqrt(x[0][0]) + std::log1p(x[0][1]); }});
  const auto f = ConstraintFunction::affine({1.0, 2.0}, 3.0);
  const auto dev = best_deviation(g, {{0.1, 0.1}}, {BudgetSet(f)});
  EXPECT_NEAR(f(dev.z[0]), 0.0, 1e-9);
  // Interior KKT point: 1/(2 sqrt x1) = mu, 1/(1 + x2) = 2 mu with x1 + 2 x2 = 3.
  const double x2 = dev.z[0][1];
  EXPECT_NEAR(1.0 / (2.0 * std::sqrt(dev.z[0][0])) * 2.0, 1.0 / (1.0 + x2), 1e-4);
}

TEST(BestDeviation, FixedPointAtEquilibrium) {
  QuadraticGame g({1.0, 0.5}, {0.3, 0.2});
  const auto ne = g.closed_form_equilibrium();
  const auto dev = best_deviation(g, joint({ne[0], ne[1]}), boxes(2, 10.0));
  EXPECT_NEAR(dev.z[0][0], ne[0], 1e-6);
  EXPECT_NEAR(dev.z[1][0], ne[1], 1e-6);
  EXPECT_LT(dev.residual, 1e-10);
}

TEST(Relaxation, StartAtEquilibrium) {
  QuadraticGame g({1.0, 0.5}, {0.3, 0.2});
  const auto ne = g.closed_form_equilibrium();
  const auto res = relaxation_nash(g, boxes(2, 10.0), joint({ne[0], ne[1]}));
  EXPECT_TRUE(res.converged);
  EXPECT_LE(res.iterations, 1);
}

class RelaxationSchedules : public ::testing::TestWithParam<Schedule> {};

TEST_P(RelaxationSchedules, QuadraticClosedForm) {
  QuadraticGame g({1.0, 0.5}, {0.3, 0.2});
  const auto ne = g.closed_form_equilibrium();
  NashOptions opts;
  opts.schedule = GetParam();
  opts.tol_ne = 1e-10;
  const auto res = relaxation_nash(g, boxes(2, 10.0), joint({0, 0}), opts);
  ASSERT_TRUE(res.converged) << res.ni_residual;
  EXPECT_NEAR(res.x_star[0][0], ne[0], 1e-4);
  EXPECT_NEAR(res.x_star[1][0], ne[1], 1e-4);
}

INSTANTIATE_TEST_SUITE_P(Fast, RelaxationSchedules,
                         ::testing::Values(Schedule::Constant, Schedule::LineSearch));

// The harmonic average contracts like k^-(1 - rho), too slowly for 1e-10 in 500 steps. At
// the default tol_ne a unit-curvature residual of 1e-5 pins |Z - x| to sqrt(2e-5) and
// |x - x*| to that over (1 - rho), rho = 0.3 being the best-reply contraction.
TEST(Relaxation, HarmonicDefaultWithinResidualBound) {
  QuadraticGame g({1.0, 0.5}, {0.3, 0.2});
  const auto ne = g.closed_form_equilibrium();
  const auto res = relaxation_nash(g, boxes(2, 10.0), joint({0, 0}));
  ASSERT_TRUE(res.converged) << res.ni_residual;
  const double bound = std::sqrt(2 * kTolNe) / 0.7;
  EXPECT_NEAR(res.x_star[0][0], ne[0], bound);
  EXPECT_NEAR(res.x_star[1][0], ne[1], bound);
}

TEST(Relaxation, ReportsNonConvergence) {
  QuadraticGame g({1.0, 0.5}, {0.3, 0.2});
  NashOptions opts;
  opts.max_iters = 1;
  opts.schedule = Schedule::Constant;
  opts.constant_step = 0.01;
  const auto res = relaxation_nash(g, boxes(2, 10.0), joint({0, 0}), opts);
  EXPECT_FALSE(res.converged);
  EXPECT_GT(res.ni_residual, kTolNe);
}

TEST(Relaxation, RejectsInfeasibleStart) {
  QuadraticGame g({1.0, 0.5}, {0.3, 0.2});
  EXPECT_THROW(relaxation_nash(g, boxes(2, 1.0), joint({2, 0})), std::invalid_argument);
}

TEST(Relaxation, RiverEquilibriumIsFixedPoint) {
  RiverPollutionGame g({}, kTheta);
  const auto probes = river_probes(g.params(), 1, 3);
  std::vector<BudgetSet> sets;
  for (const auto& f : probes[0]) sets.emplace_back(f);
  const auto res = relaxation_nash(g, sets, joint({0, 0, 0}));
  ASSERT_TRUE(res.converged);
  const auto dev = best_deviation(g, res.x_star, sets);
  EXPECT_LE(dev.residual, kTolNe);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(dev.z[i][0], res.x_star[i][0], 1e-3 * (1 + res.x_star[i][0]));
    // Marginal profit stays positive, so each firm uses its whole allowance.
    EXPECT_NEAR(probes[0][i](res.x_star[i]), 0.0, 1e-6);
  }
}

TEST(Relaxation, DecouplesWithoutCongestion) {
  Vec th = kTheta;
  th[0] = 0.0;
  RiverParams p;
  p.d1 = 0.2;  // small enough that some firms stop short of the cap
  RiverPollutionGame g(p, th);
  std::vector<BudgetSet> sets = boxes(3, 5.0);
  const auto res = relaxation_nash(g, sets, joint({0, 0, 0}));
  ASSERT_TRUE(res.converged);
  for (std::size_t i = 0; i < 3; ++i) {
    double best_x = 0, best_f = -1e300;
    for (int s = 0; s <= 50000; ++s) {
      const double x = 5.0 * s / 50000;
      const double f = p.d1 * x - th[1 + i] * std::sqrt(x) - th[4 + i] * x;
      if (f > best_f) best_f = f, best_x = x;
    }
    EXPECT_NEAR(res.x_star[i][0], best_x, 1e-3);
  }
}

TEST(RiverProbes, EmissionsAndShape) {
  RiverParams p;
  const auto grid = river_probes(p, 4, 17);
  ASSERT_EQ(grid.size(), 4u);
  for (const auto& row : grid) {
    ASSERT_EQ(row.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
      const double worst = std::max(p.delta[i][0], p.delta[i][1]);
      const double e = row[i].alpha()[0] / worst;
      EXPECT_GT(e, 0.0);
      EXPECT_LE(e, 1.0);
      EXPECT_EQ(row[i].offset(), 100.0);
    }
  }
  EXPECT_EQ(grid, river_probes(p, 4, 17));
}

TEST(RiverProbes, SurrogateImpliesStationCaps) {
  RiverParams p;
  RiverPollutionGame g(p, kTheta);
  const auto grid = river_probes(p, 1, 2);
  JointAction x;
  std::array<double, 3> e{};
  for (std::size_t i = 0; i < 3; ++i) {
    x.push_back({100.0 / grid[0][i].alpha()[0]});
    e[i] = grid[0][i].alpha()[0] / std::max(p.delta[i][0], p.delta[i][1]);
  }
  // Each firm alone at its surrogate limit loads every station by at most the cap.
  for (std::size_t i = 0; i < 3; ++i) {
    JointAction solo(3, Vec{0.0});
    solo[i] = x[i];
    for (double q : g.station_loads(solo, e)) EXPECT_LE(q, 100.0 + 1e-9);
  }
}

TEST(Collect, PureDiagonalAndDeterminism) {
  RiverPollutionGame g({}, kTheta);
  const auto probes = river_probes(g.params(), 5, 11);
  CollectOptions opts;
  opts.seed = 4;
  const auto d = collect_dataset(g, probes, opts);
  EXPECT_EQ(d.T(), 5u);
  EXPECT_EQ(d.M(), 3u);
  for (std::size_t t = 0; t < 5; ++t)
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_EQ(d.gbar(t, t, i), probes[t][i](d.strategy(t, i).samples()[0]));
      EXPECT_LE(d.gbar(t, t, i), kTolFeas);
    }
  const auto again = collect_dataset(g, probes, opts);
  EXPECT_EQ(d.strategies(), again.strategies());
}

TEST(Collect, JitteredSamplesStayFeasibleAndThreadCountIsIrrelevant) {
  RiverPollutionGame g({}, kTheta);
  const auto probes = river_probes(g.params(), 6, 12);
  CollectOptions opts;
  opts.seed = 9;
  opts.N = 20;
  opts.jitter = 2.0;
  const auto one = collect_dataset(g, probes, opts);
  opts.threads = 3;
  const auto three = collect_dataset(g, probes, opts);
  EXPECT_EQ(one.strategies(), three.strategies());
  for (std::size_t t = 0; t < 6; ++t)
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_EQ(one.strategy(t, i).size(), 20u);
      for (const auto& x : one.strategy(t, i).samples()) EXPECT_LE(probes[t][i](x), kTolFeas);
    }
}

TEST(Collect, RiverDataIsRationalizable) {
  RiverPollutionGame g({}, kTheta);
  const auto d = collect_dataset(g, river_probes(g.params(), 10, 21), {});
  EXPECT_LE(rp::pareto_gap(d).gap, kTolR);
}

TEST(Collect, FailureNamesThePeriod) {
  QuadraticGame g({1.0, 0.5}, {0.3, 0.2});
  ConstraintGrid probes(2, {ConstraintFunction::affine({1.0}, 10.0), ConstraintFunction::affine({1.0}, 10.0)});
  CollectOptions opts;
  opts.nash.max_iters = 0;
  try {
    collect_dataset(g, probes, opts);
    FAIL() << "expected NashFailure";
  } catch (const NashFailure& e) {
    EXPECT_EQ(e.period(), 0u);
    EXPECT_GT(e.residual(), kTolNe);
  }
}
