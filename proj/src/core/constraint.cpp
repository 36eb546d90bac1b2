#include "pforge/core/constraint.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pforge {
namespace {

double dot(VecView a, VecView b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

// log(1 + exp(y)) without overflow.
double softplus(double y) {
  return std::max(y, 0.0) + std::log1p(std::exp(-std::abs(y)));
}

double logistic(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void require_finite(const Vec& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument(std::string(what) + " must be finite");
    }
  }
}

}  // namespace

std::string_view to_string(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::Affine:
      return "affine";
    case ConstraintKind::LogSigmoid:
      return "log_sigmoid";
    case ConstraintKind::ShiftedBase:
      return "shifted_base";
  }
  return "unknown";
}

ConstraintKind constraint_kind_from_string(std::string_view name) {
  if (name == "affine") return ConstraintKind::Affine;
  if (name == "log_sigmoid") return ConstraintKind::LogSigmoid;
  if (name == "shifted_base") return ConstraintKind::ShiftedBase;
  throw std::invalid_argument("unknown constraint kind '" + std::string(name) + "'");
}

ConstraintFunction::ConstraintFunction(ConstraintKind kind, ConstraintKind base_kind,
                                       Vec alpha, double offset, double shift, Vec beta)
    : kind_(kind),
      base_kind_(base_kind),
      alpha_(std::move(alpha)),
      offset_(offset),
      shift_(shift),
      beta_(std::move(beta)) {
  if (alpha_.empty()) throw std::invalid_argument("constraint dimension must be >= 1");
  require_finite(alpha_, "alpha");
  require_finite(beta_, "beta");
  if (!std::isfinite(offset_) || !std::isfinite(shift_)) {
    throw std::invalid_argument("constraint offset and shift must be finite");
  }
  for (double a : alpha_) {
    if (a < 0.0) throw std::invalid_argument("alpha must be non-negative (g increasing)");
  }
  if (beta_.size() != alpha_.size()) {
    throw std::invalid_argument("beta dimension does not match alpha");
  }
}

ConstraintFunction ConstraintFunction::affine(Vec alpha, double b) {
  const std::size_t k = alpha.size();
  return {ConstraintKind::Affine, ConstraintKind::Affine, std::move(alpha), b, 0.0,
          Vec(k, 0.0)};
}

ConstraintFunction ConstraintFunction::log_sigmoid(std::size_t dim) {
  return log_sigmoid(Vec(dim, 1.0), 0.0);
}

ConstraintFunction ConstraintFunction::log_sigmoid(Vec alpha, double b) {
  const std::size_t k = alpha.size();
  return {ConstraintKind::LogSigmoid, ConstraintKind::LogSigmoid, std::move(alpha), b,
          0.0, Vec(k, 0.0)};
}

ConstraintFunction ConstraintFunction::shifted(double a, Vec beta) const {
  if (kind_ == ConstraintKind::ShiftedBase) {
    throw std::invalid_argument("cannot shift an already shifted constraint");
  }
  if (beta.size() != dim()) throw std::invalid_argument("beta dimension mismatch");
  return {ConstraintKind::ShiftedBase, base_kind_, alpha_, offset_, a, std::move(beta)};
}

double ConstraintFunction::base_value(VecView x) const {
  const double z = dot(alpha_, x) - offset_;
  if (base_kind_ == ConstraintKind::Affine) return z;
  return std::numbers::ln2 - softplus(-z);
}

double ConstraintFunction::value_unchecked(VecView x) const {
  if (x.size() != dim()) {
    throw std::invalid_argument("point dimension " + std::to_string(x.size()) +
                                " does not match constraint dimension " +
                                std::to_string(dim()));
  }
  if (kind_ != ConstraintKind::ShiftedBase || shift_ == 0.0) return base_value(x);
  Vec moved(x.begin(), x.end());
  for (std::size_t j = 0; j < moved.size(); ++j) moved[j] -= shift_ * beta_[j];
  return base_value(moved);
}

double ConstraintFunction::operator()(VecView x) const {
  for (double xj : x) {
    if (!(xj >= 0.0)) throw std::invalid_argument("constraint evaluated at a negative coordinate");
  }
  return value_unchecked(x);
}

Vec ConstraintFunction::gradient(VecView x) const {
  if (x.size() != dim()) throw std::invalid_argument("gradient dimension mismatch");
  if (base_kind_ == ConstraintKind::Affine) return alpha_;
  double z = dot(alpha_, x) - offset_;
  if (kind_ == ConstraintKind::ShiftedBase) z -= shift_ * dot(alpha_, beta_);
  const double scale = logistic(-z);
  Vec g(alpha_);
  for (double& gj : g) gj *= scale;
  return g;
}

Halfspace ConstraintFunction::zero_sublevel() const {
  // log(2 sigma(z)) <= 0 iff z <= 0, so both families reduce to <alpha, x> <= b.
  Halfspace h{alpha_, offset_};
  if (kind_ == ConstraintKind::ShiftedBase) h.level += shift_ * dot(alpha_, beta_);
  return h;
}

double eval_constraint(const ConstraintFunction& f, VecView x) { return f(x); }

bool is_monotone_increasing(const ScalarField& f, std::size_t dim, Rng& rng, int trials,
                            double box_hi) {
  Vec x(dim);
  for (int n = 0; n < trials; ++n) {
    for (double& xj : x) xj = rng.uniform(0.0, box_hi);
    const auto j = static_cast<std::size_t>(rng.next_u64() % dim);
    const double step = rng.uniform(1e-3, 1.0);
    const double before = f(x);
    x[j] += step;
    const double after = f(x);
    if (after < before - 1e-12 * (1.0 + std::abs(before))) return false;
  }
  return true;
}

bool is_concave(const ScalarField& f, std::size_t dim, Rng& rng, int trials,
                double box_hi) {
  Vec x(dim), y(dim), mid(dim);
  for (int n = 0; n < trials; ++n) {
    for (std::size_t j = 0; j < dim; ++j) {
      x[j] = rng.uniform(0.0, box_hi);
      y[j] = rng.uniform(0.0, box_hi);
      mid[j] = 0.5 * (x[j] + y[j]);
    }
    const double fx = f(x), fy = f(y);
    if (f(mid) < 0.5 * (fx + fy) - 1e-10 * (1.0 + std::abs(fx) + std::abs(fy))) {
      return false;
    }
  }
  return true;
}

namespace {

void validate_recipe(const ProbeRecipe& recipe) {
  if (recipe.bases.empty()) throw std::invalid_argument("probe recipe has no agents");
  if (recipe.bases.size() != recipe.betas.size()) {
    throw std::invalid_argument("probe recipe needs one beta per base");
  }
  for (std::size_t i = 0; i < recipe.bases.size(); ++i) {
    if (recipe.betas[i].size() != recipe.bases[i].dim()) {
      throw std::invalid_argument("beta dimension mismatch for agent " + std::to_string(i));
    }
    if (std::all_of(recipe.betas[i].begin(), recipe.betas[i].end(),
                    [](double b) { return b == 0.0; })) {
      throw std::invalid_argument("beta must be nonzero");
    }
  }
}

}  // namespace

ConstraintGrid probes_from_shifts(const ProbeRecipe& recipe, VecView shifts) {
  validate_recipe(recipe);
  ConstraintGrid grid;
  grid.reserve(shifts.size());
  for (double a : shifts) {
    std::vector<ConstraintFunction> row;
    row.reserve(recipe.bases.size());
    for (std::size_t i = 0; i < recipe.bases.size(); ++i) {
      row.push_back(recipe.bases[i].shifted(a, recipe.betas[i]));
    }
    grid.push_back(std::move(row));
  }
  return grid;
}

ConstraintGrid generate_probes(const ProbeRecipe& recipe, std::size_t periods) {
  if (periods == 0) throw std::invalid_argument("need at least one period");
  if (!(recipe.chi_hi > recipe.chi_lo) || !std::isfinite(recipe.chi_lo) ||
      !std::isfinite(recipe.chi_hi)) {
    throw std::invalid_argument("chi must be a finite interval of positive length");
  }
  Rng rng(recipe.seed);
  Vec shifts(periods);
  for (double& a : shifts) a = rng.uniform(recipe.chi_lo, recipe.chi_hi);
  return probes_from_shifts(recipe, shifts);
}

namespace {

// Finds a root of phi(tau) = h(origin + tau * dir) by scanning [-span, span]
// for a sign change and bisecting inside it.
bool find_level_point(const ScalarField& h, const Vec& origin, const Vec& dir, Vec& out) {
  constexpr int kScan = 400;
  constexpr double kSpan = 20.0;
  auto at = [&](double tau) {
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = origin[j] + tau * dir[j];
    return h(out);
  };
  double prev_tau = -kSpan;
  double prev = at(prev_tau);
  for (int s = 1; s <= kScan; ++s) {
    const double tau = -kSpan + 2.0 * kSpan * s / kScan;
    const double cur = at(tau);
    if ((prev <= 0.0) != (cur <= 0.0)) {
      double lo = prev_tau, hi = tau;
      const bool lo_nonpos = prev <= 0.0;
      for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double m = 0.5 * (lo + hi);
        if ((at(m) <= 0.0) == lo_nonpos) lo = m; else hi = m;
      }
      at(0.5 * (lo + hi));
      return true;
    }
    prev_tau = tau;
    prev = cur;
  }
  return false;
}

}  // namespace

bool check_shift_invariance(const ScalarField& base, VecView beta, int trials,
                            std::uint64_t seed, double tol) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const std::size_t k = beta.size();
  Rng rng(seed);
  Vec x0(k), y0(k), dx(k), dy(k), x(k), y(k), moved(k);
  for (int n = 0; n < trials; ++n) {
    const double a = rng.uniform(-2.0, 2.0);
    auto shifted = [&](VecView p) {
      for (std::size_t j = 0; j < k; ++j) moved[j] = p[j] - a * beta[j];
      return base(moved);
    };
    for (std::size_t j = 0; j < k; ++j) {
      x0[j] = rng.uniform(-3.0, 3.0);
      y0[j] = rng.uniform(-3.0, 3.0);
      dx[j] = rng.uniform(0.1, 1.0);
      dy[j] = rng.uniform(0.1, 1.0);
    }
    if (!find_level_point(shifted, x0, dx, x)) continue;
    if (!find_level_point(shifted, y0, dy, y)) continue;
    const double gx = base(x), gy = base(y);
    if (std::abs(gx - gy) > tol * (1.0 + std::abs(gx) + std::abs(gy)) + 1e-9) return false;
  }
  return true;
}

bool check_shift_invariance(const ConstraintFunction& base, VecView beta, int trials,
                            std::uint64_t seed, double tol) {
  return check_shift_invariance(
      [&base](VecView p) { return base.value_unchecked(p); }, beta, trials, seed, tol);
}

}  // namespace pforge
