#include "pforge/core/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pforge {

EmpiricalStrategy::EmpiricalStrategy(std::vector<Vec> samples) : samples_(std::move(samples)) {
  if (samples_.empty()) throw std::invalid_argument("empirical strategy needs at least one sample");
  const std::size_t k = samples_.front().size();
  if (k == 0) throw std::invalid_argument("sample dimension must be >= 1");
  for (const auto& x : samples_) {
    if (x.size() != k) throw std::invalid_argument("samples have different dimensions");
    for (double v : x) {
      if (!std::isfinite(v) || v < 0.0) {
        throw std::invalid_argument("samples must be finite and non-negative");
      }
    }
  }
}

EmpiricalStrategy EmpiricalStrategy::pure(Vec point) {
  return EmpiricalStrategy(std::vector<Vec>{std::move(point)});
}

Vec EmpiricalStrategy::mean() const {
  Vec m(dim(), 0.0);
  for (const auto& x : samples_) {
    for (std::size_t j = 0; j < m.size(); ++j) m[j] += x[j];
  }
  for (double& v : m) v /= static_cast<double>(samples_.size());
  return m;
}

double expected_constraint(const ConstraintFunction& f, const EmpiricalStrategy& s) {
  if (s.size() == 0) throw std::invalid_argument("empty sample list");
  double sum = 0.0;
  for (const auto& x : s.samples()) sum += f(x);
  return sum / static_cast<double>(s.size());
}

RPDataset::RPDataset(ConstraintGrid constraints, Grid<EmpiricalStrategy> strategies,
                     double tol_feas)
    : constraints_(std::move(constraints)), strategies_(std::move(strategies)) {
  T_ = constraints_.size();
  if (T_ == 0) throw std::invalid_argument("dataset needs T >= 1");
  if (strategies_.size() != T_) throw std::invalid_argument("strategy grid has wrong T");
  M_ = constraints_.front().size();
  if (M_ == 0) throw std::invalid_argument("dataset needs M >= 1");
  k_ = constraints_.front().front().dim();
  for (std::size_t t = 0; t < T_; ++t) {
    if (constraints_[t].size() != M_ || strategies_[t].size() != M_) {
      throw std::invalid_argument("ragged dataset grid at period " + std::to_string(t));
    }
    for (std::size_t i = 0; i < M_; ++i) {
      if (constraints_[t][i].dim() != k_ || strategies_[t][i].dim() != k_) {
        throw std::invalid_argument("dimension mismatch at (t=" + std::to_string(t) +
                                    ", i=" + std::to_string(i) + ")");
      }
      for (const auto& x : strategies_[t][i].samples()) {
        const double g = constraints_[t][i](x);
        if (g > tol_feas) {
          throw std::invalid_argument("sample outside its budget at (t=" + std::to_string(t) +
                                      ", i=" + std::to_string(i) + "): g = " + std::to_string(g));
        }
      }
    }
  }
  gbar_.resize(T_ * T_ * M_);
  for (std::size_t t = 0; t < T_; ++t)
    for (std::size_t s = 0; s < T_; ++s)
      for (std::size_t i = 0; i < M_; ++i)
        gbar_[(t * T_ + s) * M_ + i] = expected_constraint(constraints_[t][i], strategies_[s][i]);
}

double RPDataset::max_negative_gbar() const {
  double m = 0.0;
  for (double g : gbar_) m = std::max(m, -g);
  return m;
}

bool validate_certificate(const RPDataset& d, const ParetoCertificate& cert, double tol) {
  const std::size_t T = d.T(), M = d.M();
  if (cert.u.size() != T || cert.lambda.size() != T) return false;
  if (!(cert.alpha > 0.0) || !(cert.r >= 0.0)) return false;
  for (std::size_t t = 0; t < T; ++t) {
    if (cert.u[t].size() != M || cert.lambda[t].size() != M) return false;
    for (std::size_t i = 0; i < M; ++i) {
      if (!(cert.lambda[t][i] >= cert.alpha - tol)) return false;
    }
  }
  for (std::size_t i = 0; i < M; ++i)
    for (std::size_t t = 0; t < T; ++t)
      for (std::size_t s = 0; s < T; ++s) {
        const double lhs = cert.u[s][i] - cert.u[t][i] - cert.lambda[t][i] * d.gbar(t, s, i);
        if (lhs > cert.lambda[t][i] * cert.r + tol) return false;
      }
  return true;
}

}  // namespace pforge
