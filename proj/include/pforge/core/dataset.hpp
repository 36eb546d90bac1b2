#pragma once

#include <cstddef>
#include <vector>

#include "pforge/core/constraint.hpp"
#include "pforge/core/tolerances.hpp"

namespace pforge {

// N equally weighted sample points of one agent's mixed strategy. N = 1 is a pure strategy.
class EmpiricalStrategy {
 public:
  EmpiricalStrategy() = default;
  explicit EmpiricalStrategy(std::vector<Vec> samples);
  static EmpiricalStrategy pure(Vec point);

  const std::vector<Vec>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  std::size_t dim() const { return samples_.empty() ? 0 : samples_.front().size(); }
  Vec mean() const;

  bool operator==(const EmpiricalStrategy&) const = default;

 private:
  std::vector<Vec> samples_;
};

// (1/N) sum_k f(gamma_k).
double expected_constraint(const ConstraintFunction& f, const EmpiricalStrategy& s);

template <class T>
using Grid = std::vector<std::vector<T>>;  // [t][i]

class RPDataset {
 public:
  // Throws std::invalid_argument if the grids are ragged, dimensions disagree,
  // or some observed sample leaves its own budget by more than tol_feas.
  RPDataset(ConstraintGrid constraints, Grid<EmpiricalStrategy> strategies,
            double tol_feas = kTolFeas);

  std::size_t T() const { return T_; }
  std::size_t M() const { return M_; }
  std::size_t k() const { return k_; }
  const ConstraintFunction& constraint(std::size_t t, std::size_t i) const {
    return constraints_[t][i];
  }
  const EmpiricalStrategy& strategy(std::size_t t, std::size_t i) const {
    return strategies_[t][i];
  }
  const ConstraintGrid& constraints() const { return constraints_; }
  const Grid<EmpiricalStrategy>& strategies() const { return strategies_; }

  // g_t^i(mu_s^i), averaged over the samples of period s.
  double gbar(std::size_t t, std::size_t s, std::size_t i) const {
    return gbar_[(t * T_ + s) * M_ + i];
  }
  double max_negative_gbar() const;  // max(0, max -gbar)

 private:
  std::size_t T_ = 0, M_ = 0, k_ = 0;
  ConstraintGrid constraints_;
  Grid<EmpiricalStrategy> strategies_;
  std::vector<double> gbar_;
};

struct ParetoCertificate {
  Grid<double> u;       // [t][i]
  Grid<double> lambda;  // [t][i]
  double r = 0.0;
  double alpha = kDefaultAlpha;
};

// Checks lambda >= alpha and every relaxed Afriat inequality to tol.
bool validate_certificate(const RPDataset& d, const ParetoCertificate& cert,
                          double tol = kTolLp);

}  // namespace pforge
