#include "pforge/core/budget_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pforge {
namespace {

double dot(VecView a, VecView b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

double dist(VecView a, VecView b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
  return std::sqrt(s);
}

}  // namespace

BudgetSet::BudgetSet(Vec normal, double level) : w_(std::move(normal)), c_(level) {
  if (w_.empty()) throw std::invalid_argument("budget set dimension must be >= 1");
  for (double wj : w_) {
    if (!(wj > 0.0) || !std::isfinite(wj)) {
      throw std::invalid_argument("budget normal must be finite and strictly positive");
    }
  }
  if (!(c_ >= 0.0) || !std::isfinite(c_)) {
    throw std::invalid_argument("budget set is empty (level < 0)");
  }
}

BudgetSet::BudgetSet(const ConstraintFunction& g) : BudgetSet(g.zero_sublevel().normal, g.zero_sublevel().level) {}

bool BudgetSet::contains(VecView x, double tol) const {
  for (double v : x)
    if (v < -tol) return false;
  return dot(w_, x) <= c_ + tol;
}

Vec BudgetSet::project(VecView y) const {
  if (y.size() != dim()) throw std::invalid_argument("projection dimension mismatch");
  Vec z(y.size());
  for (std::size_t j = 0; j < z.size(); ++j) z[j] = std::max(0.0, y[j]);
  if (dot(w_, z) <= c_) return z;
  // x(tau) = max(0, y - tau w); <w, x(tau)> is continuous and decreasing in tau.
  double lo = 0.0, hi = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) hi = std::max(hi, y[j] / w_[j]);
  auto at = [&](double tau) {
    for (std::size_t j = 0; j < z.size(); ++j) z[j] = std::max(0.0, y[j] - tau * w_[j]);
    return dot(w_, z);
  };
  for (int it = 0; it < 200 && hi - lo > 1e-16 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (at(mid) > c_) lo = mid; else hi = mid;
  }
  at(hi);
  return z;
}

Vec BudgetSet::project_ball(VecView y, VecView center, double radius) const {
  if (center.size() != dim() || y.size() != dim()) {
    throw std::invalid_argument("projection dimension mismatch");
  }
  if (!(radius >= 0.0)) throw std::invalid_argument("radius must be non-negative");
  auto ball = [&](const Vec& v) {
    const double d = dist(v, center);
    if (d <= radius) return v;
    Vec out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) out[j] = center[j] + (v[j] - center[j]) * radius / d;
    return out;
  };
  const std::size_t k = dim();
  Vec x(y.begin(), y.end()), p(k, 0.0), q(k, 0.0), tmp(k);
  for (int it = 0; it < 2000; ++it) {
    for (std::size_t j = 0; j < k; ++j) tmp[j] = x[j] + p[j];
    Vec a = project(tmp);
    for (std::size_t j = 0; j < k; ++j) {
      p[j] = tmp[j] - a[j];
      tmp[j] = a[j] + q[j];
    }
    Vec b = ball(tmp);
    for (std::size_t j = 0; j < k; ++j) q[j] = tmp[j] - b[j];
    const double change = dist(b, x);
    x = std::move(b);
    if (change < 1e-14 && dist(a, x) < 1e-12) break;
  }
  // Clean up the last iterate so it lies inside the budget set exactly.
  Vec z = project(x);
  return dist(z, center) <= radius * (1.0 + 1e-12) + 1e-14 ? z : x;
}

std::vector<Vec> BudgetSet::vertices() const {
  std::vector<Vec> out;
  out.emplace_back(dim(), 0.0);
  for (std::size_t j = 0; j < dim(); ++j) {
    Vec v(dim(), 0.0);
    v[j] = c_ / w_[j];
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Vec> BudgetSet::grid(int steps) const {
  if (steps < 1) throw std::invalid_argument("grid needs steps >= 1");
  if (dim() > 3) throw std::invalid_argument("grid is only built for k <= 3");
  std::vector<Vec> out;
  std::vector<int> idx(dim(), 0);
  while (true) {
    int total = 0;
    for (int v : idx) total += v;
    if (total <= steps) {
      Vec x(dim());
      for (std::size_t j = 0; j < dim(); ++j) {
        x[j] = static_cast<double>(idx[j]) / steps * c_ / w_[j];
      }
      out.push_back(std::move(x));
    }
    std::size_t j = 0;
    while (j < dim() && ++idx[j] > steps) idx[j++] = 0;
    if (j == dim()) break;
  }
  return out;
}

Vec numeric_gradient(const ScalarField& f, VecView x, double h) {
  Vec g(x.size());
  Vec p(x.begin(), x.end());
  const double f0 = f(p);
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double hj = h * std::max(1.0, std::abs(x[j]));
    if (x[j] < hj) {
      p[j] = x[j] + hj;
      g[j] = (f(p) - f0) / hj;
    } else {
      p[j] = x[j] + hj;
      const double fp = f(p);
      p[j] = x[j] - hj;
      g[j] = (fp - f(p)) / (2.0 * hj);
    }
    p[j] = x[j];
  }
  return g;
}

AscentResult projected_ascent(const ScalarField& f, const Projector& proj, Vec x0,
                              const AscentOptions& opts) {
  Vec x = proj(x0);
  double fx = f(x);
  double step = opts.initial_step;
  Vec trial(x.size());
  for (int it = 0; it < opts.max_iters; ++it) {
    const Vec g = numeric_gradient(f, x, opts.fd_step);
    double gnorm = 0.0;
    for (double v : g) gnorm = std::max(gnorm, std::abs(v));
    if (!(gnorm > 0.0) || !std::isfinite(gnorm)) break;
    bool moved = false;
    double s = step / gnorm;
    for (int bt = 0; bt < 60; ++bt, s *= 0.5) {
      for (std::size_t j = 0; j < x.size(); ++j) trial[j] = x[j] + s * g[j];
      Vec cand = proj(trial);
      const double fc = f(cand);
      if (fc > fx) {
        const double change = dist(cand, x);
        x = std::move(cand);
        const double gain = fc - fx;
        fx = fc;
        moved = true;
        step = std::min(2.0 * s * gnorm, 1e6);
        if (change < opts.tol || gain < opts.tol * (1.0 + std::abs(fx))) it = opts.max_iters;
        break;
      }
    }
    if (!moved) break;
  }
  return {std::move(x), fx};
}

AscentResult multistart_ascent(const ScalarField& f, const Projector& proj,
                               const std::vector<Vec>& starts, const AscentOptions& opts) {
  if (starts.empty()) throw std::invalid_argument("multistart needs at least one start");
  AscentResult best{{}, -std::numeric_limits<double>::infinity()};
  for (const auto& s : starts) {
    AscentResult r = projected_ascent(f, proj, s, opts);
    if (r.value > best.value || best.x.empty()) best = std::move(r);
  }
  return best;
}

}  // namespace pforge
