#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "pforge/core/rng.hpp"

namespace pforge {

using Vec = std::vector<double>;
using VecView = std::span<const double>;

enum class ConstraintKind { Affine, LogSigmoid, ShiftedBase };

std::string_view to_string(ConstraintKind kind);
ConstraintKind constraint_kind_from_string(std::string_view name);

// Zero sublevel set written as a half-space: g(x) <= 0  iff  <normal, x> <= level.
// Every built-in family has this shape, which is what makes budget sets polytopes.
struct Halfspace {
  Vec normal;
  double level = 0.0;
};

// A per-agent budget ("probe") function g. Built-in families:
//   Affine       g(x) = <alpha, x> - b
//   LogSigmoid   g(x) = log(2 sigma(<alpha, x> - b))      (alpha = 1, b = 0 gives log(2 sigma(sum x)))
//   ShiftedBase  g(x) = base(x - a beta)                  base is Affine or LogSigmoid
// Immutable after construction.
class ConstraintFunction {
 public:
  static ConstraintFunction affine(Vec alpha, double b);
  static ConstraintFunction log_sigmoid(std::size_t dim);
  static ConstraintFunction log_sigmoid(Vec alpha, double b);

  // base(x - a * beta). Only an unshifted base can be shifted.
  ConstraintFunction shifted(double a, Vec beta) const;

  ConstraintKind kind() const { return kind_; }
  // Family of the underlying base; equals kind() unless kind() is ShiftedBase.
  ConstraintKind base_kind() const { return base_kind_; }
  const Vec& alpha() const { return alpha_; }
  double offset() const { return offset_; }
  double shift() const { return shift_; }
  const Vec& beta() const { return beta_; }
  std::size_t dim() const { return alpha_.size(); }

  // Evaluation on the non-negative orthant; throws std::invalid_argument on a
  // dimension mismatch or a negative coordinate.
  double operator()(VecView x) const;
  // Evaluation anywhere in R^k (validators probe outside the orthant).
  double value_unchecked(VecView x) const;
  Vec gradient(VecView x) const;
  Halfspace zero_sublevel() const;

  bool operator==(const ConstraintFunction&) const = default;

 private:
  ConstraintFunction(ConstraintKind kind, ConstraintKind base_kind, Vec alpha,
                     double offset, double shift, Vec beta);
  double base_value(VecView x) const;

  ConstraintKind kind_;
  ConstraintKind base_kind_;
  Vec alpha_;
  double offset_;
  double shift_;
  Vec beta_;
};

double eval_constraint(const ConstraintFunction& f, VecView x);

using ScalarField = std::function<double(VecView)>;

// Numerical shape checks on random points of [0, box_hi]^dim.
bool is_monotone_increasing(const ScalarField& f, std::size_t dim, Rng& rng,
                            int trials = 200, double box_hi = 5.0);
bool is_concave(const ScalarField& f, std::size_t dim, Rng& rng,
                int trials = 200, double box_hi = 5.0);

// Probe grid indexed [t][i].
using ConstraintGrid = std::vector<std::vector<ConstraintFunction>>;

struct ProbeRecipe {
  std::vector<ConstraintFunction> bases;  // g^i, one per agent
  std::vector<Vec> betas;                 // beta^i, one per agent
  double chi_lo = 0.0;                    // a_t ~ Uniform[chi_lo, chi_hi]
  double chi_hi = 1.0;
  std::uint64_t seed = 0;
};

// g_t^i = g^i(. - a_t beta^i) with one a_t per period shared by all agents.
ConstraintGrid generate_probes(const ProbeRecipe& recipe, std::size_t periods);
ConstraintGrid probes_from_shifts(const ProbeRecipe& recipe, VecView shifts);

// Samples shifts a and pairs x, y on the zero level set of base(. - a beta)
// and reports whether base(x) == base(y) held on every pair.
bool check_shift_invariance(const ScalarField& base, VecView beta, int trials,
                            std::uint64_t seed, double tol = 1e-8);
bool check_shift_invariance(const ConstraintFunction& base, VecView beta,
                            int trials, std::uint64_t seed, double tol = 1e-8);

}  // namespace pforge
