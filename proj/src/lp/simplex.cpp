#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "pforge/lp/lp.hpp"

namespace pforge::lp {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Optimal:
      return "optimal";
    case Status::Infeasible:
      return "infeasible";
    case Status::Unbounded:
      return "unbounded";
    case Status::NumericalFailure:
      return "numerical_failure";
  }
  return "unknown";
}

void LinearProgram::validate() const {
  const std::size_t n = c.size();
  if (lower.size() != n || upper.size() != n) {
    throw std::invalid_argument("bounds must have one entry per variable");
  }
  if (A.size() != b.size()) throw std::invalid_argument("A and b have different row counts");
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (A[i].size() != n) throw std::invalid_argument("row " + std::to_string(i) + " has wrong length");
    for (double v : A[i])
      if (!std::isfinite(v)) throw std::invalid_argument("A must be finite");
    if (!std::isfinite(b[i])) throw std::invalid_argument("b must be finite");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(c[j])) throw std::invalid_argument("c must be finite");
    if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] > upper[j] ||
        lower[j] == kInf || upper[j] == -kInf) {
      throw std::invalid_argument("bad bounds on variable " + std::to_string(j));
    }
  }
}

LinearProgram LinearProgram::with_vars(std::size_t n) {
  LinearProgram lp;
  lp.c.assign(n, 0.0);
  lp.lower.assign(n, -kInf);
  lp.upper.assign(n, kInf);
  return lp;
}

double max_violation(const LinearProgram& lp, const Vec& x) {
  double v = 0.0;
  for (std::size_t i = 0; i < lp.A.size(); ++i) {
    double ax = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) ax += lp.A[i][j] * x[j];
    v = std::max(v, ax - lp.b[i]);
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    v = std::max(v, lp.lower[j] - x[j]);
    v = std::max(v, x[j] - lp.upper[j]);
  }
  return v;
}

namespace {

// x_j = offset_j + sign_j * y_pos  (- y_neg if split)
struct VarMap {
  double offset = 0.0;
  double sign = 1.0;
  int pos = -1;
  int neg = -1;  // only for free variables
};

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), t_((rows + 1) * (cols + 1), 0.0) {}

  double& at(std::size_t r, std::size_t c) { return t_[r * (n_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return t_[r * (n_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, n_); }
  double& cost(std::size_t c) { return at(m_, c); }  // reduced-cost row
  double& obj() { return at(m_, n_); }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double inv = 1.0 / at(pr, pc);
    for (std::size_t c = 0; c <= n_; ++c) at(pr, c) *= inv;
    at(pr, pc) = 1.0;
    for (std::size_t r = 0; r <= m_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= n_; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
  }

 private:
  std::size_t m_, n_;
  std::vector<double> t_;
};

enum class Outcome { Done, Unbounded, IterationLimit, Singular };

constexpr long kRefactorEvery = 25;
constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Rebuilds the tableau of `basis` from the original rows (Gauss-Jordan with partial
// pivoting) and installs the reduced costs of `cost`. Drift from long pivot sequences
// is discarded this way. Returns false if the basis matrix is numerically singular.
bool refactor(Tableau& tab, const Tableau& orig, std::vector<std::size_t>& basis, const Vec& cost) {
  tab = orig;
  const std::size_t m = tab.rows();
  std::vector<char> assigned(m, 0);
  std::vector<std::size_t> placed(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t c = basis[k];
    std::size_t best = m;
    double mag = 1e-12;
    for (std::size_t r = 0; r < m; ++r) {
      if (!assigned[r] && std::abs(tab.at(r, c)) > mag) {
        mag = std::abs(tab.at(r, c));
        best = r;
      }
    }
    if (best == m) return false;
    tab.pivot(best, c);
    assigned[best] = 1;
    placed[best] = c;
  }
  basis = placed;
  for (std::size_t c = 0; c < tab.cols(); ++c) tab.cost(c) = cost[c];
  tab.obj() = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    const double f = tab.cost(basis[r]);
    if (f == 0.0) continue;
    for (std::size_t c = 0; c <= tab.cols(); ++c) tab.at(m, c) -= f * tab.at(r, c);
  }
  return true;
}

// Minimizes the cost row over columns with allowed[c]; Bland's rule.
// In phase 1 the objective is bounded below, so a column with no usable pivot is a
// round-off artefact; it is skipped until the next pivot instead of reported.
// partner[c] is the column equal to -column c (the halves of a split free variable, a row's
// slack and its artificial) or kNone. A basis holding both is singular, yet round-off can
// make the second one look like an admissible entering column.
Outcome run_simplex(Tableau& tab, std::vector<std::size_t>& basis, const std::vector<char>& allowed,
                    const std::vector<std::size_t>& partner, const SimplexOptions& opts, long& iters,
                    bool bounded_below, const std::function<bool()>& refresh) {
  std::vector<char> skip(tab.cols(), 0), in_basis(tab.cols(), 0);
  for (std::size_t c : basis) in_basis[c] = 1;
  while (true) {
    if (iters >= opts.max_iterations) return Outcome::IterationLimit;
    if (iters > 0 && iters % kRefactorEvery == 0 && !refresh()) return Outcome::Singular;
    std::size_t enter = tab.cols();
    for (std::size_t c = 0; c < tab.cols(); ++c) {
      if (partner[c] != kNone && in_basis[partner[c]]) continue;
      if (allowed[c] && !skip[c] && tab.cost(c) < -opts.cost_tol) {
        enter = c;
        break;
      }
    }
    if (enter == tab.cols()) return Outcome::Done;
    double best = kInf;
    for (std::size_t r = 0; r < tab.rows(); ++r) {
      const double a = tab.at(r, enter);
      if (a > opts.pivot_tol) best = std::min(best, std::max(tab.rhs(r), 0.0) / a);
    }
    std::size_t leave = tab.rows();
    if (best < kInf) {
      const double slack = 4.0 * std::numeric_limits<double>::epsilon() * best;
      for (std::size_t r = 0; r < tab.rows(); ++r) {
        const double a = tab.at(r, enter);
        if (a <= opts.pivot_tol || std::max(tab.rhs(r), 0.0) / a > best + slack) continue;
        if (leave == tab.rows() || basis[r] < basis[leave]) leave = r;
      }
    }
    if (leave == tab.rows()) {
      if (!bounded_below) return Outcome::Unbounded;
      skip[enter] = 1;
      continue;
    }
    std::fill(skip.begin(), skip.end(), 0);
    tab.pivot(leave, enter);
    in_basis[basis[leave]] = 0;
    in_basis[enter] = 1;
    basis[leave] = enter;
    ++iters;
  }
}

LPResult solve_once(const LinearProgram& lp, const SimplexOptions& opts) {
  const std::size_t n = lp.num_vars();

  // Map every original variable onto non-negative ones.
  std::vector<VarMap> map(n);
  int ny = 0;
  struct UpperRow {
    int var;
    double bound;
  };
  std::vector<UpperRow> upper_rows;
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = lp.lower[j], hi = lp.upper[j];
    if (std::isfinite(lo)) {
      map[j] = {lo, 1.0, ny++, -1};
      if (std::isfinite(hi)) upper_rows.push_back({map[j].pos, hi - lo});
    } else if (std::isfinite(hi)) {
      map[j] = {hi, -1.0, ny++, -1};
    } else {
      map[j] = {0.0, 1.0, ny, ny + 1};
      ny += 2;
    }
  }

  // Rows in y-space: sum_k a'_k y_k <= b'.
  const std::size_t m = lp.num_rows() + upper_rows.size();
  Matrix rows(m, Vec(ny, 0.0));
  Vec rhs(m, 0.0);
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    double shift = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double a = lp.A[i][j];
      if (a == 0.0) continue;
      shift += a * map[j].offset;
      rows[i][map[j].pos] += a * map[j].sign;
      if (map[j].neg >= 0) rows[i][map[j].neg] -= a;
    }
    rhs[i] = lp.b[i] - shift;
  }
  for (std::size_t u = 0; u < upper_rows.size(); ++u) {
    rows[lp.num_rows() + u][upper_rows[u].var] = 1.0;
    rhs[lp.num_rows() + u] = upper_rows[u].bound;
  }

  // Columns: y (ny), slacks (m), artificials (one per negative-rhs row).
  std::vector<std::size_t> art_rows;
  for (std::size_t i = 0; i < m; ++i)
    if (rhs[i] < 0.0) art_rows.push_back(i);
  const std::size_t slack0 = ny, art0 = ny + m, ncols = ny + m + art_rows.size();
  Tableau tab(m, ncols);
  std::vector<std::size_t> basis(m);
  std::vector<char> is_art(ncols, 0);
  {
    std::size_t a = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const double sgn = rhs[i] < 0.0 ? -1.0 : 1.0;
      for (int k = 0; k < ny; ++k) tab.at(i, k) = sgn * rows[i][k];
      tab.at(i, slack0 + i) = sgn;
      tab.rhs(i) = sgn * rhs[i];
      if (sgn < 0.0) {
        tab.at(i, art0 + a) = 1.0;
        is_art[art0 + a] = 1;
        basis[i] = art0 + a;
        ++a;
      } else {
        basis[i] = slack0 + i;
      }
    }
  }

  std::vector<std::size_t> partner(ncols, kNone);
  for (const auto& v : map)
    if (v.neg >= 0) {
      partner[v.pos] = static_cast<std::size_t>(v.neg);
      partner[v.neg] = static_cast<std::size_t>(v.pos);
    }
  // A row's artificial and its (sign-flipped) slack are the same column up to sign.
  for (std::size_t a = 0; a < art_rows.size(); ++a) {
    partner[art0 + a] = slack0 + art_rows[a];
    partner[slack0 + art_rows[a]] = art0 + a;
  }
  const Tableau orig = tab;
  Vec cost1(ncols, 0.0), cost2(ncols, 0.0);
  for (std::size_t c = art0; c < ncols; ++c) cost1[c] = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    cost2[map[j].pos] += lp.c[j] * map[j].sign;
    if (map[j].neg >= 0) cost2[map[j].neg] -= lp.c[j];
  }

  LPResult res;
  long iters = 0;
  auto fail = [&](Status s) {
    res.status = s;
    res.iterations = iters;
    return res;
  };

  // Phase 1: minimize the sum of artificials.
  if (!art_rows.empty()) {
    if (!refactor(tab, orig, basis, cost1)) return fail(Status::NumericalFailure);
    std::vector<char> allowed(ncols, 1);
    auto refresh = [&] { return refactor(tab, orig, basis, cost1); };
    const Outcome o = run_simplex(tab, basis, allowed, partner, opts, iters, true, refresh);
    if (o != Outcome::Done || !refresh()) return fail(Status::NumericalFailure);
    // Bound rows are satisfiable on their own, so only the original rows set the scale.
    double bnorm = 1.0;
    for (std::size_t i = 0; i < lp.num_rows(); ++i) bnorm = std::max(bnorm, std::abs(rhs[i]));
    if (-tab.obj() > 1e-9 * bnorm) return fail(Status::Infeasible);
    // Drive zero-level artificials out of the basis where possible.
    for (std::size_t r = 0; r < m; ++r) {
      if (!is_art[basis[r]]) continue;
      std::size_t best = ncols;
      double mag = opts.pivot_tol * 1e3;
      for (std::size_t c = 0; c < art0; ++c) {
        if (partner[c] != kNone && std::find(basis.begin(), basis.end(), partner[c]) != basis.end()) continue;
        if (std::abs(tab.at(r, c)) > mag) {
          mag = std::abs(tab.at(r, c));
          best = c;
        }
      }
      if (best != ncols) {
        tab.pivot(r, best);
        basis[r] = best;
      }
    }
  }

  // Phase 2, re-run after a fresh factorization until the reduced costs agree.
  std::vector<char> allowed(ncols, 1);
  for (std::size_t c = art0; c < ncols; ++c) allowed[c] = 0;
  auto refresh = [&] { return refactor(tab, orig, basis, cost2); };
  if (!refresh()) return fail(Status::NumericalFailure);
  for (int round = 0;; ++round) {
    const long before = iters;
    const Outcome o = run_simplex(tab, basis, allowed, partner, opts, iters, false, refresh);
    if (o == Outcome::Unbounded) return fail(Status::Unbounded);
    if (o != Outcome::Done || !refresh()) return fail(Status::NumericalFailure);
    if (iters == before || round == 3) break;
  }
  res.iterations = iters;

  Vec y(ny, 0.0);
  for (std::size_t r = 0; r < m; ++r)
    if (basis[r] < static_cast<std::size_t>(ny)) y[basis[r]] = tab.rhs(r);
  res.x.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    res.x[j] = map[j].offset + map[j].sign * y[map[j].pos];
    if (map[j].neg >= 0) res.x[j] -= y[map[j].neg];
    // Snap tiny bound violations left by round-off.
    res.x[j] = std::clamp(res.x[j], lp.lower[j], lp.upper[j]);
  }
  if (max_violation(lp, res.x) > opts.feas_tol) {
    res.status = Status::NumericalFailure;
    res.x.clear();
    return res;
  }
  res.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) res.objective += lp.c[j] * res.x[j];
  res.status = Status::Optimal;
  return res;
}

}  // namespace

LPResult DenseSimplex::solve(const LinearProgram& lp) {
  lp.validate();
  // A numerical failure usually means a pivot on a round-off entry somewhere along the path.
  // Start over with a coarser pivot tolerance; every answer is still residual-checked.
  SimplexOptions o = opts_;
  long iters = 0;
  LPResult res;
  for (int attempt = 0; attempt < 3; ++attempt, o.pivot_tol *= 100.0) {
    res = solve_once(lp, o);
    iters += res.iterations;
    if (res.status != Status::NumericalFailure) break;
  }
  res.iterations = iters;
  return res;
}

LPResult solve(const LinearProgram& lp) {
  DenseSimplex s;
  return s.solve(lp);
}

LPResult solve(const LinearProgram& lp, Backend& backend) { return backend.solve(lp); }

Feasibility feasible(const Matrix& A, const Vec& b, const Vec& lower, const Vec& upper,
                     Backend& backend) {
  LinearProgram lp;
  lp.c.assign(lower.size(), 0.0);
  lp.A = A;
  lp.b = b;
  lp.lower = lower;
  lp.upper = upper;
  LPResult r = backend.solve(lp);
  return {r.status, std::move(r.x)};
}

Feasibility feasible(const Matrix& A, const Vec& b, const Vec& lower, const Vec& upper) {
  DenseSimplex s;
  return feasible(A, b, lower, upper, s);
}

}  // namespace pforge::lp
