#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "pforge/core/budget_set.hpp"
#include "pforge/core/constraint.hpp"
#include "pforge/core/dataset.hpp"
#include "pforge/core/dataset_io.hpp"
#include "pforge/core/rng.hpp"

using namespace pforge;

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
  Rng c = a.split(3), d = b.split(3), e = b.split(4);
  EXPECT_EQ(c.next_u64(), d.next_u64());
  EXPECT_NE(c.seed(), e.seed());
}

TEST(Rng, UniformAndNormalMoments) {
  Rng r(7);
  double s = 0, s2 = 0, n1 = 0, n2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    s += u;
    const double z = r.normal();
    n1 += z;
    n2 += z * z;
  }
  EXPECT_NEAR(s / n, 0.5, 0.005);
  EXPECT_NEAR(n1 / n, 0.0, 0.01);
  EXPECT_NEAR(n2 / n, 1.0, 0.01);
  int plus = 0;
  for (int i = 0; i < 10000; ++i) {
    const double v = r.rademacher();
    ASSERT_TRUE(v == 1.0 || v == -1.0);
    plus += v > 0;
  }
  EXPECT_NEAR(plus / 10000.0, 0.5, 0.02);
}

TEST(Constraint, AffineBoundary) {
  auto g = ConstraintFunction::affine({1, 1}, 1);
  EXPECT_DOUBLE_EQ(g(Vec{0.5, 0.5}), 0.0);
}

TEST(Constraint, AffineHandValue) {
  auto g = ConstraintFunction::affine({2, 3}, 1);
  EXPECT_DOUBLE_EQ(g(Vec{1, 1}), 4.0);
}

TEST(Constraint, LogSigmoidAtOrigin) {
  auto g = ConstraintFunction::log_sigmoid(3);
  EXPECT_NEAR(g(Vec{0, 0, 0}), 0.0, 1e-15);
  // log(2 sigma(2)) by hand
  EXPECT_NEAR(g(Vec{1, 0.5, 0.5}), std::log(2.0 / (1.0 + std::exp(-2.0))), 1e-14);
  // no overflow far out
  EXPECT_NEAR(g(Vec{800, 0, 0}), std::log(2.0), 1e-12);
}

TEST(Constraint, ShiftedAffineSubstitution) {
  auto base = ConstraintFunction::affine({2, 3}, 1);
  auto g = base.shifted(0.5, {1, 0});
  const Vec x{1.2, 0.7};
  EXPECT_NEAR(g(x), 2 * (1.2 - 0.5) + 3 * 0.7 - 1, 1e-14);
  EXPECT_THROW(g.shifted(1.0, {1, 0}), std::invalid_argument);
}

TEST(Constraint, EvalErrors) {
  auto g = ConstraintFunction::affine({1, 1}, 1);
  EXPECT_THROW(g(Vec{1}), std::invalid_argument);
  EXPECT_THROW(g(Vec{1, -0.1}), std::invalid_argument);
  EXPECT_THROW(ConstraintFunction::affine({}, 0), std::invalid_argument);
}

TEST(Constraint, GradientMatchesFiniteDifference) {
  auto g = ConstraintFunction::log_sigmoid({0.5, 2.0}, 0.3).shifted(0.7, {1, 1});
  const Vec x{0.4, 0.9};
  const Vec grad = g.gradient(x);
  for (std::size_t j = 0; j < 2; ++j) {
    Vec p = x, m = x;
    p[j] += 1e-6;
    m[j] -= 1e-6;
    EXPECT_NEAR(grad[j], (g(p) - g(m)) / 2e-6, 1e-8);
  }
}

TEST(Constraint, ZeroSublevelHalfspace) {
  Rng rng(3);
  const auto g = ConstraintFunction::log_sigmoid({1.0, 0.5}, 0.2).shifted(0.8, {0.3, 1.0});
  const Halfspace h = g.zero_sublevel();
  for (int n = 0; n < 2000; ++n) {
    const Vec x{rng.uniform(0, 3), rng.uniform(0, 3)};
    const double lin = h.normal[0] * x[0] + h.normal[1] * x[1] - h.level;
    if (std::abs(lin) < 1e-9) continue;
    EXPECT_EQ(g(x) <= 0.0, lin <= 0.0);
  }
}

TEST(Constraint, ValidatorsAcceptBuiltins) {
  Rng rng(11);
  const std::vector<ConstraintFunction> fams = {
      ConstraintFunction::affine({1, 2}, 1), ConstraintFunction::log_sigmoid(2),
      ConstraintFunction::log_sigmoid(2).shifted(0.4, {1, 1})};
  for (const auto& g : fams) {
    auto f = [&g](VecView x) { return g.value_unchecked(x); };
    EXPECT_TRUE(is_monotone_increasing(f, 2, rng));
    EXPECT_TRUE(is_concave(f, 2, rng));
  }
}

TEST(Constraint, ValidatorsRejectBadFunctions) {
  Rng rng(12);
  auto convex = [](VecView x) { return x[0] * x[0] + x[1] * x[1]; };
  auto decreasing = [](VecView x) { return -x[0] - x[1]; };
  EXPECT_FALSE(is_concave(convex, 2, rng));
  EXPECT_FALSE(is_monotone_increasing(decreasing, 2, rng));
}

TEST(Probes, DeterministicAndShifted) {
  ProbeRecipe recipe;
  recipe.bases = {ConstraintFunction::affine({1, 1}, 1), ConstraintFunction::log_sigmoid(2)};
  recipe.betas = {{1, 0}, {0.5, 0.5}};
  recipe.chi_lo = 0.0;
  recipe.chi_hi = 2.0;
  recipe.seed = 99;
  const auto a = generate_probes(recipe, 6), b = generate_probes(recipe, 6);
  ASSERT_EQ(a.size(), 6u);
  EXPECT_EQ(a, b);
  for (std::size_t t = 0; t < 6; ++t) {
    EXPECT_EQ(a[t][0].shift(), a[t][1].shift());
    EXPECT_GE(a[t][0].shift(), 0.0);
    EXPECT_LT(a[t][0].shift(), 2.0);
  }
  recipe.chi_hi = 0.0;
  EXPECT_THROW(generate_probes(recipe, 3), std::invalid_argument);
}

TEST(Probes, ZeroShiftReturnsBase) {
  ProbeRecipe recipe;
  recipe.bases = {ConstraintFunction::affine({1, 2}, 1)};
  recipe.betas = {{1, 1}};
  const Vec shifts{0.0};
  const auto g = probes_from_shifts(recipe, shifts);
  for (const Vec& x : {Vec{0, 0}, Vec{1, 2}, Vec{0.3, 0.1}}) {
    EXPECT_EQ(g[0][0](x), recipe.bases[0](x));
  }
}

TEST(Probes, ShiftInvariance) {
  const Vec beta1{1.0, -0.5};
  EXPECT_TRUE(check_shift_invariance(ConstraintFunction::affine({1, 2}, 1), beta1, 50, 1));
  const Vec betac{0.7, 0.7, 0.7};
  EXPECT_TRUE(check_shift_invariance(ConstraintFunction::log_sigmoid(3), betac, 50, 2));
  auto quad = [](VecView x) { return x[0] * x[0] + x[1] - 1.0; };
  const Vec b10{1.0, 0.0};
  EXPECT_FALSE(check_shift_invariance(quad, b10, 50, 3));
}

TEST(Dataset, ExpectedConstraint) {
  auto g = ConstraintFunction::affine({1}, 1);
  EXPECT_DOUBLE_EQ(expected_constraint(g, EmpiricalStrategy::pure({0.3})), g(Vec{0.3}));
  EmpiricalStrategy two({{0.8}, {0.6}});
  EXPECT_NEAR(expected_constraint(g, two), -0.3, 1e-15);
  EXPECT_THROW(EmpiricalStrategy(std::vector<Vec>{}), std::invalid_argument);
}

TEST(Dataset, ExpectedConstraintMonteCarlo) {
  // x ~ U[0,1]^2, g = log(2 sigma(x1 + x2)); the integral is evaluated with a fine midpoint rule.
  auto g = ConstraintFunction::log_sigmoid(2);
  Rng rng(5);
  std::vector<Vec> xs;
  for (int n = 0; n < 1000; ++n) xs.push_back({rng.uniform(), rng.uniform()});
  EmpiricalStrategy s(xs);
  double exact = 0.0, m2 = 0.0;
  const int G = 400;
  for (int i = 0; i < G; ++i)
    for (int j = 0; j < G; ++j) exact += g(Vec{(i + 0.5) / G, (j + 0.5) / G});
  exact /= G * G;
  const double mc = expected_constraint(g, s);
  for (const auto& x : xs) m2 += (g(x) - mc) * (g(x) - mc);
  const double stderr_ = std::sqrt(m2 / (xs.size() - 1) / xs.size());
  EXPECT_LE(std::abs(mc - exact), 3 * stderr_);
}

TEST(Dataset, ExpectedConstraintIsLinearInMixture) {
  auto g = ConstraintFunction::log_sigmoid(2).shifted(0.2, {1, 1});
  std::vector<Vec> a{{0.1, 0.2}, {0.3, 0.1}, {0.0, 0.4}}, b{{0.5, 0.5}};
  // weight 3/4 on a, 1/4 on b: replicate b three times in the pooled sample
  std::vector<Vec> pooled = a;
  for (int r = 0; r < 3; ++r) pooled.push_back(b[0]);
  pooled.insert(pooled.end(), a.begin(), a.end());
  pooled.insert(pooled.end(), a.begin(), a.end());
  // pooled = 9 from a, 3 from b
  const double mix = expected_constraint(g, EmpiricalStrategy(pooled));
  const double want = 0.75 * expected_constraint(g, EmpiricalStrategy(a)) +
                      0.25 * expected_constraint(g, EmpiricalStrategy(b));
  EXPECT_NEAR(mix, want, 1e-12);
}

TEST(Dataset, RejectsOverBudgetPlay) {
  ConstraintGrid g{{ConstraintFunction::affine({1}, 1)}};
  Grid<EmpiricalStrategy> s{{EmpiricalStrategy::pure({1.5})}};
  EXPECT_THROW(RPDataset(g, s), std::invalid_argument);
}

TEST(Dataset, GbarAndJsonRoundTrip) {
  ConstraintGrid g{{ConstraintFunction::affine({1, 2}, 1), ConstraintFunction::log_sigmoid(2)},
                   {ConstraintFunction::affine({2, 1}, 1).shifted(0.1, {1, 0}),
                    ConstraintFunction::log_sigmoid({1, 1}, 0.5).shifted(0.3, {0.5, 0.5})}};
  Grid<EmpiricalStrategy> s{{EmpiricalStrategy::pure({0.1, 0.2}), EmpiricalStrategy({{0, 0}, {0.0, 0.0}})},
                            {EmpiricalStrategy::pure({0.1 / 3, 0.9}), EmpiricalStrategy::pure({0.2, 0.1})}};
  RPDataset d(g, s);
  EXPECT_NEAR(d.gbar(0, 1, 0), (0.1 / 3) + 1.8 - 1, 1e-15);
  const auto path = std::filesystem::temp_directory_path() / "pforge_ds_roundtrip.json";
  write_dataset(d, path);
  RPDataset e = read_dataset(path);
  EXPECT_EQ(e.constraints(), d.constraints());
  EXPECT_EQ(e.strategies(), d.strategies());
  for (std::size_t t = 0; t < 2; ++t)
    for (std::size_t u = 0; u < 2; ++u)
      for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(e.gbar(t, u, i), d.gbar(t, u, i));
  std::filesystem::remove(path);
}

TEST(DatasetIo, RejectsMalformed) {
  EXPECT_THROW(dataset_from_json(nlohmann::json::parse(R"({"T":1,"M":1,"k":1})")), std::exception);
  EXPECT_THROW(constraint_from_json(nlohmann::json::parse(R"({"kind":"cubic","alpha":[1],"b":0})")),
               std::invalid_argument);
}

TEST(BudgetSet, ProjectionIsNearestPoint) {
  BudgetSet a({1.0, 2.0, 0.5}, 1.0);
  Rng rng(21);
  for (int n = 0; n < 200; ++n) {
    const Vec y{rng.uniform(-1, 3), rng.uniform(-1, 3), rng.uniform(-1, 3)};
    const Vec p = a.project(y);
    ASSERT_TRUE(a.contains(p, 1e-12));
    auto d2 = [&](const Vec& z) {
      double s = 0;
      for (int j = 0; j < 3; ++j) s += (z[j] - y[j]) * (z[j] - y[j]);
      return s;
    };
    for (const auto& z : a.grid(12)) EXPECT_GE(d2(z), d2(p) - 1e-12);
  }
}

TEST(BudgetSet, BallProjection) {
  BudgetSet a({1.0, 1.0}, 1.0);
  const Vec c{0.2, 0.2};
  const Vec p = a.project_ball(Vec{2.0, 2.0}, c, 0.1);
  EXPECT_TRUE(a.contains(p, 1e-12));
  EXPECT_NEAR(std::hypot(p[0] - 0.2, p[1] - 0.2), 0.1, 1e-9);
  EXPECT_NEAR(p[0], p[1], 1e-9);
  const Vec q = a.project_ball(Vec{2.0, 0.0}, Vec{0.5, 0.5}, 1.0);
  EXPECT_NEAR(q[0], 1.0, 1e-6);
  EXPECT_NEAR(q[1], 0.0, 1e-6);
}

TEST(BudgetSet, AscentFindsConcaveMaximum) {
  BudgetSet a({1.0, 1.0}, 1.0);
  auto f = [](VecView x) { return std::sqrt(x[0]) + std::sqrt(x[1]); };
  auto proj = [&a](VecView y) { return a.project(y); };
  const auto r = multistart_ascent(f, proj, a.vertices());
  EXPECT_NEAR(r.x[0], 0.5, 1e-4);
  EXPECT_NEAR(r.value, std::sqrt(2.0), 1e-8);
}
