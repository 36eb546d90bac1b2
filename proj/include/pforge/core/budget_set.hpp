#pragma once

#include <functional>
#include <vector>

#include "pforge/core/constraint.hpp"

namespace pforge {

// {x >= 0 : <w, x> <= c} with w > 0 componentwise, i.e. a scaled simplex.
class BudgetSet {
 public:
  BudgetSet(Vec normal, double level);
  explicit BudgetSet(const ConstraintFunction& g);

  std::size_t dim() const { return w_.size(); }
  const Vec& normal() const { return w_; }
  double level() const { return c_; }
  bool contains(VecView x, double tol = 0.0) const;

  // Euclidean projection.
  Vec project(VecView y) const;
  // Projection onto the set intersected with the ball ||x - center|| <= radius (Dykstra).
  Vec project_ball(VecView y, VecView center, double radius) const;

  // Origin and the k axis intercepts.
  std::vector<Vec> vertices() const;
  // Lattice points sum_j x_j w_j / c = l / steps on the scaled simplex, k <= 3.
  std::vector<Vec> grid(int steps) const;

 private:
  Vec w_;
  double c_;
};

using Projector = std::function<Vec(VecView)>;

struct AscentOptions {
  int max_iters = 300;
  double tol = 1e-11;
  double fd_step = 1e-7;
  double initial_step = 1.0;
};

struct AscentResult {
  Vec x;
  double value = 0.0;
};

// Forward differences where x_j < h (the orthant boundary), central otherwise.
Vec numeric_gradient(const ScalarField& f, VecView x, double h);

// Projected gradient ascent with a backtracking step; f is maximized over proj's range.
AscentResult projected_ascent(const ScalarField& f, const Projector& proj, Vec x0,
                              const AscentOptions& opts = {});
AscentResult multistart_ascent(const ScalarField& f, const Projector& proj,
                               const std::vector<Vec>& starts, const AscentOptions& opts = {});

}  // namespace pforge
