#pragma once

#include <cstddef>
#include <limits>
#include <string_view>
#include <vector>

#include "pforge/core/tolerances.hpp"

namespace pforge::lp {

using Vec = std::vector<double>;
using Matrix = std::vector<Vec>;  // row-major, rows = constraints

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// min c.x  s.t.  A x <= b,  lower <= x <= upper  (bounds may be +-inf).
struct LinearProgram {
  Vec c;
  Matrix A;
  Vec b;
  Vec lower;
  Vec upper;

  std::size_t num_vars() const { return c.size(); }
  std::size_t num_rows() const { return A.size(); }
  // Throws std::invalid_argument on inconsistent dimensions, NaNs, or lower > upper.
  void validate() const;
  // A program with n free variables and zero objective.
  static LinearProgram with_vars(std::size_t n);
};

enum class Status { Optimal, Infeasible, Unbounded, NumericalFailure };

std::string_view to_string(Status s);

struct LPResult {
  Status status = Status::NumericalFailure;
  Vec x;                 // filled when Optimal
  double objective = 0;  // c.x when Optimal
  long iterations = 0;
};

// Largest violation of rows and bounds at x (0 if feasible).
double max_violation(const LinearProgram& lp, const Vec& x);

class Backend {
 public:
  virtual ~Backend() = default;
  virtual LPResult solve(const LinearProgram& lp) = 0;
  virtual std::string_view name() const = 0;
};

struct SimplexOptions {
  long max_iterations = 200000;
  double pivot_tol = 1e-9;
  double cost_tol = 1e-10;
  double feas_tol = kTolLp;  // residual tolerance used to verify the answer
};

// Dense two-phase tableau simplex with Bland's rule.
class DenseSimplex final : public Backend {
 public:
  explicit DenseSimplex(SimplexOptions opts = {}) : opts_(opts) {}
  LPResult solve(const LinearProgram& lp) override;
  std::string_view name() const override { return "dense-simplex"; }

 private:
  SimplexOptions opts_;
};

LPResult solve(const LinearProgram& lp);
LPResult solve(const LinearProgram& lp, Backend& backend);

struct Feasibility {
  Status status = Status::NumericalFailure;  // Optimal means feasible
  Vec witness;
  bool ok() const { return status == Status::Optimal; }
};

Feasibility feasible(const Matrix& A, const Vec& b, const Vec& lower, const Vec& upper);
Feasibility feasible(const Matrix& A, const Vec& b, const Vec& lower, const Vec& upper,
                     Backend& backend);

}  // namespace pforge::lp
