#include "pforge/dro/dro.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "pforge/core/budget_set.hpp"
#include "pforge/core/rng.hpp"

namespace pforge::dro {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double norm2(VecView a, VecView b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
  return std::sqrt(s);
}

struct Dims {
  std::size_t T, M;
  std::size_t idx(std::size_t t, std::size_t s, std::size_t i) const { return (t * T + s) * M + i; }
  std::size_t size() const { return T * T * M; }
};

// (u_s - u_t) / lambda_t at idx(t, s, i).
std::vector<double> ratios(const PsiVector& psi, Dims dm) {
  std::vector<double> r(dm.size());
  for (std::size_t t = 0; t < dm.T; ++t)
    for (std::size_t s = 0; s < dm.T; ++s)
      for (std::size_t i = 0; i < dm.M; ++i)
        r[dm.idx(t, s, i)] = (psi.u[s][i] - psi.u[t][i]) / psi.lambda[t][i];
  return r;
}

void check_psi(const PsiVector& psi, std::size_t T, std::size_t M) {
  if (psi.u.size() != T || psi.lambda.size() != T)
    throw std::invalid_argument("psi has the wrong number of periods");
  for (std::size_t t = 0; t < T; ++t) {
    if (psi.u[t].size() != M || psi.lambda[t].size() != M)
      throw std::invalid_argument("psi has the wrong number of agents");
    for (double l : psi.lambda[t])
      if (!(l > 0.0)) throw std::invalid_argument("psi lambda must be positive");
  }
}

void check_scenario(const Scenario& phi, const RPDataset& d) {
  if (phi.size() != d.T()) throw std::invalid_argument("scenario has the wrong number of periods");
  for (const auto& row : phi) {
    if (row.size() != d.M()) throw std::invalid_argument("scenario has the wrong number of agents");
    for (const auto& g : row)
      if (g.size() != d.k()) throw std::invalid_argument("scenario point dimension mismatch");
  }
}

// h from cached ratios and g values, also reporting the maximizing term (npos if the 0 floor wins).
double h_cached(const std::vector<double>& r, const std::vector<double>& g, std::size_t* arg) {
  double best = 0.0;
  std::size_t a = std::string::npos;
  for (std::size_t j = 0; j < r.size(); ++j) {
    const double v = r[j] - g[j];
    if (v > best) best = v, a = j;
  }
  if (arg) *arg = a;
  return best;
}

}  // namespace

PsiBox PsiBox::standard(double lambda_hat) { return {1.0, lambda_hat, 1.0}; }
PsiBox PsiBox::scaled(double lambda_hat) {
  return {1.0 / lambda_hat, 1.0, 1.0 / lambda_hat};
}

void PsiBox::validate() const {
  if (!(u_hi > 0.0)) throw std::invalid_argument("psi box: u_hi must be > 0");
  if (!(lam_lo > 0.0 && lam_lo <= lam_hi)) throw std::invalid_argument("psi box: need 0 < lam_lo <= lam_hi");
}

PsiVector PsiVector::constant(std::size_t T, std::size_t M, double u, double lambda) {
  return {Grid<double>(T, std::vector<double>(M, u)), Grid<double>(T, std::vector<double>(M, lambda))};
}

bool PsiVector::in_box(const PsiBox& box) const {
  for (std::size_t t = 0; t < u.size(); ++t)
    for (std::size_t i = 0; i < u[t].size(); ++i) {
      if (std::abs(u[t][i]) > box.u_hi) return false;
      if (lambda[t][i] < box.lam_lo || lambda[t][i] > box.lam_hi) return false;
    }
  return true;
}

std::size_t sample_count(const RPDataset& d) {
  const std::size_t N = d.strategy(0, 0).size();
  for (std::size_t t = 0; t < d.T(); ++t)
    for (std::size_t i = 0; i < d.M(); ++i)
      if (d.strategy(t, i).size() != N)
        throw std::invalid_argument("robust estimation needs the same sample count everywhere");
  return N;
}

Scenario sample_scenario(const RPDataset& d, std::size_t k) {
  Scenario phi(d.T());
  for (std::size_t t = 0; t < d.T(); ++t)
    for (std::size_t i = 0; i < d.M(); ++i) phi[t].push_back(d.strategy(t, i).samples().at(k));
  return phi;
}

double h_value(const RPDataset& d, const PsiVector& psi, const Scenario& phi) {
  check_psi(psi, d.T(), d.M());
  check_scenario(phi, d);
  double best = 0.0;
  for (std::size_t t = 0; t < d.T(); ++t)
    for (std::size_t s = 0; s < d.T(); ++s)
      for (std::size_t i = 0; i < d.M(); ++i) {
        const double v =
            (psi.u[s][i] - psi.u[t][i]) / psi.lambda[t][i] - d.constraint(t, i)(phi[s][i]);
        best = std::max(best, v);
      }
  return best;
}

double nearest_sample_distance(const Scenario& phi, const RPDataset& d) {
  check_scenario(phi, d);
  double total = 0.0;
  for (std::size_t t = 0; t < d.T(); ++t)
    for (std::size_t i = 0; i < d.M(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& x : d.strategy(t, i).samples()) best = std::min(best, norm2(phi[t][i], x));
      total += best;
    }
  return total;
}

bool wasserstein_ball_check(const Scenario& phi, const RPDataset& d, double eps) {
  return nearest_sample_distance(phi, d) <= eps;
}

double scenario_distance(const Scenario& phi, const RPDataset& d, std::size_t k) {
  check_scenario(phi, d);
  double total = 0.0;
  for (std::size_t t = 0; t < d.T(); ++t)
    for (std::size_t i = 0; i < d.M(); ++i) total += norm2(phi[t][i], d.strategy(t, i).samples().at(k));
  return total;
}

double g_range(const RPDataset& d) {
  double lo = 0.0;
  const Vec zero(d.k(), 0.0);
  for (std::size_t t = 0; t < d.T(); ++t)
    for (std::size_t i = 0; i < d.M(); ++i) lo = std::min(lo, d.constraint(t, i)(zero));
  return std::abs(lo);
}

void DROConfig::validate() const {
  auto bad = [](const std::string& what) { throw std::invalid_argument("dro config: " + what); };
  if (!(lambda_hat > 0.0 && lambda_hat <= 1.0)) bad("lambda_hat must lie in (0, 1]");
  box.validate();
  if (max_iters < 1) bad("max_iters must be >= 1");
  if (v_grid < 2 || v_refine < 0 || inner_iters < 1 || master_starts < 1) bad("master settings out of range");
  if (cv_grid_steps < 1 || cv_starts < 1) bad("violation-oracle settings out of range");
}

double v_bound(const RPDataset& d, const DROConfig& cfg) {
  const double V = 2.0 * cfg.box.u_hi / cfg.box.lam_lo;
  return cfg.printed_v_bound ? V : V + g_range(d);
}

double v_last_bound(const RPDataset& d, const DROConfig& cfg, double eps) {
  if (!(eps >= 0.0)) throw std::invalid_argument("Wasserstein radius must be >= 0");
  const double V = v_bound(d, cfg);
  return eps > 0.0 ? V / eps : 1e9 * V;
}

Cut make_cut(const RPDataset& d, Scenario phi, std::size_t k) {
  check_scenario(phi, d);
  Cut c;
  const Dims dm{d.T(), d.M()};
  c.g.resize(dm.size());
  for (std::size_t t = 0; t < d.T(); ++t)
    for (std::size_t s = 0; s < d.T(); ++s)
      for (std::size_t i = 0; i < d.M(); ++i) c.g[dm.idx(t, s, i)] = d.constraint(t, i)(phi[s][i]);
  c.dist = scenario_distance(phi, d, k);
  c.phi = std::move(phi);
  return c;
}

std::size_t ScenarioSet::total() const {
  std::size_t n = 0;
  for (const auto& v : by_k) n += v.size();
  return n;
}

double master_objective(const ScenarioSet& cuts, const RPDataset& d, double eps,
                        const PsiVector& psi, double v_last, Vec* v_out) {
  const std::size_t N = cuts.by_k.size();
  if (N == 0) throw std::invalid_argument("scenario set must have one slot per sample");
  const auto r = ratios(psi, {d.T(), d.M()});
  double sum = 0.0;
  if (v_out) v_out->assign(N + 1, 0.0);
  for (std::size_t k = 0; k < N; ++k) {
    double vk = 0.0;
    for (const auto& c : cuts.by_k[k]) vk = std::max(vk, h_cached(r, c.g, nullptr) - v_last * c.dist);
    sum += vk;
    if (v_out) (*v_out)[k] = vk;
  }
  if (v_out) (*v_out)[N] = v_last;
  return eps * v_last + sum / static_cast<double>(N);
}

namespace {

// psi <-> z in [0,1]^{2TM}: u first, then lambda.
struct PsiCoder {
  Dims dm;
  PsiBox box;
  std::size_t n() const { return 2 * dm.T * dm.M; }
  PsiVector decode(const Vec& z) const {
    PsiVector p = PsiVector::constant(dm.T, dm.M, 0.0, box.lam_hi);
    for (std::size_t t = 0; t < dm.T; ++t)
      for (std::size_t i = 0; i < dm.M; ++i) {
        p.u[t][i] = -box.u_hi + 2.0 * box.u_hi * z[t * dm.M + i];
        p.lambda[t][i] = box.lam_lo + (box.lam_hi - box.lam_lo) * z[dm.T * dm.M + t * dm.M + i];
      }
    return p;
  }
  Vec encode(const PsiVector& p) const {
    Vec z(n());
    const double lw = box.lam_hi - box.lam_lo;
    for (std::size_t t = 0; t < dm.T; ++t)
      for (std::size_t i = 0; i < dm.M; ++i) {
        z[t * dm.M + i] = std::clamp((p.u[t][i] + box.u_hi) / (2.0 * box.u_hi), 0.0, 1.0);
        z[dm.T * dm.M + t * dm.M + i] =
            lw > 0.0 ? std::clamp((p.lambda[t][i] - box.lam_lo) / lw, 0.0, 1.0) : 0.0;
      }
    return z;
  }
};

// F(psi) = (1/N) sum_k max(0, max_j h(psi, Phi_kj) - v d_kj) and a subgradient in z.
double inner_value(const ScenarioSet& cuts, const PsiCoder& pc, const Vec& z, double v_last,
                   Vec* grad) {
  const PsiVector psi = pc.decode(z);
  const auto r = ratios(psi, pc.dm);
  const std::size_t N = cuts.by_k.size();
  if (grad) grad->assign(pc.n(), 0.0);
  double sum = 0.0;
  for (std::size_t k = 0; k < N; ++k) {
    double vk = 0.0;
    std::size_t arg = std::string::npos;
    for (const auto& c : cuts.by_k[k]) {
      std::size_t a;
      const double val = h_cached(r, c.g, &a) - v_last * c.dist;
      if (val > vk) vk = val, arg = a;
    }
    sum += vk;
    if (!grad || arg == std::string::npos) continue;
    const std::size_t TM = pc.dm.T * pc.dm.M;
    const std::size_t i = arg % pc.dm.M, s = (arg / pc.dm.M) % pc.dm.T, t = arg / (pc.dm.M * pc.dm.T);
    if (s == t) continue;
    const double lam = psi.lambda[t][i], diff = psi.u[s][i] - psi.u[t][i];
    const double uw = 2.0 * pc.box.u_hi, lw = pc.box.lam_hi - pc.box.lam_lo;
    (*grad)[s * pc.dm.M + i] += uw / lam / N;
    (*grad)[t * pc.dm.M + i] -= uw / lam / N;
    (*grad)[TM + t * pc.dm.M + i] -= lw * diff / (lam * lam) / N;
  }
  return sum / static_cast<double>(N);
}

struct Inner {
  Vec z;
  double value;
};

// Projected subgradient with normalized, diminishing steps; keeps the best iterate.
Inner descend(const ScenarioSet& cuts, const PsiCoder& pc, Vec z, double v_last, int iters) {
  Vec g;
  Inner best{z, inner_value(cuts, pc, z, v_last, &g)};
  for (int j = 0; j < iters; ++j) {
    double gn = 0.0;
    for (double x : g) gn += x * x;
    gn = std::sqrt(gn);
    if (!(gn > 0.0)) break;
    const double step = 0.3 / std::sqrt(j + 1.0);
    for (std::size_t a = 0; a < z.size(); ++a) z[a] = std::clamp(z[a] - step * g[a] / gn, 0.0, 1.0);
    const double val = inner_value(cuts, pc, z, v_last, &g);
    if (val < best.value) best = {z, val};
  }
  return best;
}

// Exact minimizer over v_{N+1} of the (convex, piecewise-linear) objective for fixed psi:
// it sits at 0, at the box end, or where some h_kj - v d_kj crosses zero or another cut.
double best_v_last(const ScenarioSet& cuts, const RPDataset& d, double eps, const PsiVector& psi,
                   double v_hi) {
  const auto r = ratios(psi, {d.T(), d.M()});
  std::vector<double> cand{0.0, v_hi};
  for (const auto& row : cuts.by_k) {
    std::vector<std::pair<double, double>> lines;  // (h, d)
    for (const auto& c : row) lines.emplace_back(h_cached(r, c.g, nullptr), c.dist);
    for (std::size_t a = 0; a < lines.size(); ++a) {
      if (lines[a].second > 0.0) cand.push_back(lines[a].first / lines[a].second);
      for (std::size_t b = a + 1; b < lines.size(); ++b) {
        const double dd = lines[a].second - lines[b].second;
        if (dd != 0.0) cand.push_back((lines[a].first - lines[b].first) / dd);
      }
    }
  }
  double best_v = 0.0, best = std::numeric_limits<double>::infinity();
  for (double v : cand) {
    if (!(v >= 0.0 && v <= v_hi)) continue;
    const double obj = master_objective(cuts, d, eps, psi, v);
    if (obj < best) best = obj, best_v = v;
  }
  return best_v;
}

}  // namespace

MasterResult master_solve(const ScenarioSet& cuts, const RPDataset& d, double eps,
                          const DROConfig& cfg, const MasterResult* warm) {
  cfg.validate();
  const std::size_t N = sample_count(d);
  if (cuts.by_k.size() != N) throw std::invalid_argument("scenario set must have one slot per sample");
  const PsiCoder pc{{d.T(), d.M()}, cfg.box};
  const double v_hi = v_last_bound(d, cfg, eps);

  MasterResult out;
  out.psi = PsiVector::constant(d.T(), d.M(), 0.0, cfg.box.lam_hi);
  if (cuts.total() == 0) {
    out.v.assign(N + 1, 0.0);
    out.objective = 0.0;
    return out;
  }

  // Seed pool: warm start, the centre of the u box, and random points.
  std::vector<Vec> pool{pc.encode(out.psi)};
  if (warm && !warm->psi.u.empty()) pool.insert(pool.begin(), pc.encode(warm->psi));
  Rng rng(mix_seed(cfg.seed, cuts.total()));
  for (int s = 1; s < cfg.master_starts; ++s) {
    Vec z(pc.n());
    for (double& x : z) x = rng.uniform();
    pool.push_back(std::move(z));
  }

  // Outer search over v_{N+1}: 0 plus a geometric grid ending at v_hi, then refinement
  // between the neighbours of the best grid point. The inner solve warm-starts from the
  // best psi seen so far.
  const double v_lo = std::min(v_hi, 1e-3 * v_bound(d, cfg));
  std::vector<double> grid{0.0};
  for (int j = 0; j < cfg.v_grid; ++j)
    grid.push_back(v_lo * std::pow(v_hi / v_lo, static_cast<double>(j) / (cfg.v_grid - 1)));

  Vec best_z = pool.front();
  double best_val = std::numeric_limits<double>::infinity(), best_v = 0.0;
  auto try_v = [&](double v, bool all_starts) {
    std::vector<Vec> starts{best_z};
    if (all_starts) starts.insert(starts.end(), pool.begin(), pool.end());
    for (const auto& z0 : starts) {
      const Inner in = descend(cuts, pc, z0, v, cfg.inner_iters);
      const double obj = eps * v + in.value;
      if (obj < best_val) best_val = obj, best_v = v, best_z = in.z;
    }
  };
  try_v(grid.front(), true);
  for (std::size_t j = 1; j < grid.size(); ++j) try_v(grid[j], false);
  for (int round = 0; round < cfg.v_refine; ++round) {
    std::size_t at = 0;
    std::vector<double> sorted = grid;
    std::sort(sorted.begin(), sorted.end());
    while (at + 1 < sorted.size() && sorted[at] < best_v) ++at;
    const double lo = sorted[at == 0 ? 0 : at - 1], hi = sorted[std::min(at + 1, sorted.size() - 1)];
    grid.clear();
    for (int j = 1; j <= 6; ++j) grid.push_back(lo + (hi - lo) * j / 7.0);
    for (double v : grid) try_v(v, false);
    grid.push_back(lo);
    grid.push_back(hi);
  }

  // Multistart spread at the chosen v_{N+1}, then an exact v step and a final polish.
  double lo_start = std::numeric_limits<double>::infinity(), hi_start = -lo_start;
  for (const auto& z0 : pool) {
    const Inner in = descend(cuts, pc, z0, best_v, cfg.inner_iters);
    lo_start = std::min(lo_start, in.value);
    hi_start = std::max(hi_start, in.value);
    if (eps * best_v + in.value < best_val) best_val = eps * best_v + in.value, best_z = in.z;
  }
  out.spread_warning = hi_start - lo_start > cfg.spread_tol;
  for (int polish = 0; polish < 2; ++polish) {
    best_v = best_v_last(cuts, d, eps, pc.decode(best_z), v_hi);
    const Inner in = descend(cuts, pc, best_z, best_v, cfg.inner_iters);
    best_z = in.z;
  }
  out.psi = pc.decode(best_z);
  best_v = best_v_last(cuts, d, eps, out.psi, v_hi);
  out.objective = master_objective(cuts, d, eps, out.psi, best_v, &out.v);
  return out;
}

Violation constraint_violation(std::size_t k, const PsiVector& psi, const Vec& v,
                               const RPDataset& d, const DROConfig& cfg, std::uint64_t seed) {
  const std::size_t N = sample_count(d);
  if (k >= N) throw std::out_of_range("sample index out of range");
  if (v.size() != N + 1) throw std::invalid_argument("v must have N + 1 entries");
  check_psi(psi, d.T(), d.M());
  const std::size_t T = d.T(), M = d.M();
  const Dims dm{T, M};
  const auto r = ratios(psi, dm);
  const double pen = v[N];

  Violation out;
  out.phi = sample_scenario(d, k);
  double best = h_value(d, psi, out.phi);
  std::size_t best_s = T, best_i = M;
  Vec best_gamma;

  Rng rng(seed);
  for (std::size_t s = 0; s < T; ++s)
    for (std::size_t i = 0; i < M; ++i) {
      const BudgetSet set(d.constraint(s, i));
      const Vec& centre = out.phi[s][i];
      // Coarse lattice over the budget set (plus the sample and a few random points).
      std::vector<Vec> pts = d.k() <= 3 ? set.grid(cfg.cv_grid_steps) : set.vertices();
      pts.push_back(centre);
      for (int extra = 0; extra < 4; ++extra) {
        Vec y(d.k());
        for (std::size_t j = 0; j < y.size(); ++j) y[j] = rng.uniform(0.0, 1.0) * set.level() / set.normal()[j];
        pts.push_back(set.project(y));
      }
      for (std::size_t t = 0; t < T; ++t) {
        const ConstraintFunction& g = d.constraint(t, i);
        const double rr = r[dm.idx(t, s, i)];
        ScalarField phi_t = [&](VecView x) { return rr - g.value_unchecked(x) - pen * norm2(x, centre); };
        std::vector<std::pair<double, std::size_t>> scored;
        for (std::size_t p = 0; p < pts.size(); ++p) scored.emplace_back(phi_t(pts[p]), p);
        const std::size_t keep = std::min<std::size_t>(cfg.cv_starts, scored.size());
        std::partial_sort(scored.begin(), scored.begin() + keep, scored.end(),
                          [](const auto& a, const auto& b) { return a.first > b.first; });
        std::vector<Vec> starts{centre};
        for (std::size_t q = 0; q < keep; ++q) starts.push_back(pts[scored[q].second]);
        AscentOptions opts;
        opts.max_iters = 200;
        const AscentResult a =
            multistart_ascent(phi_t, [&](VecView y) { return set.project(y); }, starts, opts);
        double val = a.value;
        Vec x = a.x;
        if (scored.front().first > val) val = scored.front().first, x = pts[scored.front().second];
        if (val > best) {
          best = val;
          best_s = s, best_i = i;
          best_gamma = std::move(x);
        }
      }
    }
  if (best_s < T) out.phi[best_s][best_i] = std::move(best_gamma);
  out.cv = best - v[k];
  return out;
}

ExchangeResult exchange_loop(const RPDataset& d, double eps, double delta, const DROConfig& cfg) {
  cfg.validate();
  if (!(delta > 0.0)) throw std::invalid_argument("stopping tolerance delta must be > 0");
  if (!(eps >= 0.0)) throw std::invalid_argument("Wasserstein radius must be >= 0");
  const std::size_t N = sample_count(d);

  ExchangeResult res;
  DROState& st = res.state;
  st.epsilon = eps;
  st.delta = delta;
  st.cuts.by_k.assign(N, {});
  MasterResult master;
  master.psi = PsiVector::constant(d.T(), d.M(), 0.0, cfg.box.lam_hi);
  master.v.assign(N + 1, 0.0);
  const Rng root(cfg.seed);

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    std::vector<Violation> vio(N);
    std::exception_ptr error;
    std::mutex mu;
    auto work = [&](std::size_t begin, std::size_t step) {
      for (std::size_t k = begin; k < N; k += step) {
        try {
          vio[k] = constraint_violation(k, master.psi, master.v, d, cfg,
                                        root.split(static_cast<std::uint64_t>(iter)).split(k).seed());
        } catch (...) {
          std::lock_guard lock(mu);
          if (!error) error = std::current_exception();
        }
      }
    };
    const std::size_t workers = std::clamp<std::size_t>(cfg.threads, 1, N);
    if (workers == 1) {
      work(0, 1);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
      for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);

    st.cv.assign(N, 0.0);
    double max_cv = kNegInf;
    for (std::size_t k = 0; k < N; ++k) {
      st.cv[k] = vio[k].cv;
      max_cv = std::max(max_cv, vio[k].cv);
    }
    st.iteration = iter;
    st.psi_hat = master.psi;
    st.v_hat = master.v;
    st.master_objective = master.objective;
    if (max_cv < delta) {
      st.certified = true;
      res.trace.push_back({iter, max_cv, master.objective, st.cuts.total()});
      break;
    }
    for (std::size_t k = 0; k < N; ++k)
      if (vio[k].cv > 0.0) st.cuts.by_k[k].push_back(make_cut(d, std::move(vio[k].phi), k));
    master = master_solve(st.cuts, d, eps, cfg, &master);
    res.trace.push_back({iter, max_cv, master.objective, st.cuts.total()});
  }
  if (!st.certified) {
    st.psi_hat = master.psi;
    st.v_hat = master.v;
    st.master_objective = master.objective;
  }
  return res;
}

double robust_gap(const PsiVector& psi, const RPDataset& d, double eps, const DROConfig& cfg) {
  if (!(eps >= 0.0)) throw std::invalid_argument("Wasserstein radius must be >= 0");
  check_psi(psi, d.T(), d.M());
  (void)cfg;
  const std::size_t T = d.T(), M = d.M();
  const auto r = ratios(psi, {T, M});
  double best = 0.0;
  // Only the block carrying the maximizing term needs to move; the others sit on samples at
  // zero cost, so that block may travel eps from its nearest sample.
  for (std::size_t s = 0; s < T; ++s)
    for (std::size_t i = 0; i < M; ++i) {
      const BudgetSet set(d.constraint(s, i));
      for (std::size_t t = 0; t < T; ++t) {
        const ConstraintFunction& g = d.constraint(t, i);
        double gmin = std::numeric_limits<double>::infinity();
        for (const auto& c : d.strategy(s, i).samples()) {
          if (eps == 0.0) {
            gmin = std::min(gmin, g(c));
            continue;
          }
          ScalarField neg = [&](VecView x) { return -g.value_unchecked(x); };
          AscentOptions opts;
          opts.max_iters = 200;
          const AscentResult a =
              projected_ascent(neg, [&](VecView y) { return set.project_ball(y, c, eps); }, c, opts);
          gmin = std::min({gmin, g(c), -a.value});
        }
        best = std::max(best, (psi.u[s][i] - psi.u[t][i]) / psi.lambda[t][i] - gmin);
      }
    }
  return best;
}

double log10_iteration_bound(std::size_t T, std::size_t M, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");
  return (2.0 * T * M + 2.0) * std::log10(1.0 / delta + 1.0);
}

}  // namespace pforge::dro
