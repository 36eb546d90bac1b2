#include "synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pforge/core/budget_set.hpp"
#include "pforge/lp/lp.hpp"

namespace pforge::synth {

ConstraintGrid random_budgets(Rng& rng, const SyntheticOptions& o) {
  ConstraintGrid g(o.T);
  for (std::size_t t = 0; t < o.T; ++t) {
    for (std::size_t i = 0; i < o.M; ++i) {
      Vec w(o.k);
      for (double& v : w) v = rng.uniform(0.2, 1.2);
      const bool logsig = o.mixed_kinds && !o.face_mixtures && rng.uniform() < 0.5;
      if (!logsig) {
        g[t].push_back(ConstraintFunction::affine(w, rng.uniform(0.5, 1.5)));
      } else {
        Vec beta(o.k);
        for (double& v : beta) v = rng.uniform(0.0, 1.0);
        g[t].push_back(ConstraintFunction::log_sigmoid(w, rng.uniform(0.1, 0.6))
                           .shifted(rng.uniform(0.5, 1.5), beta));
      }
    }
  }
  return g;
}

Vec ces_optimum(const Vec& a, double rho, const Vec& w, double c) {
  // rho a_j x_j^(rho-1) = mu w_j  =>  x_j proportional to (a_j / w_j)^(1/(1-rho))
  Vec x(a.size());
  double level = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    x[j] = std::pow(a[j] / w[j], 1.0 / (1.0 - rho));
    level += w[j] * x[j];
  }
  for (double& v : x) v *= c / level;
  return x;
}

namespace {

struct Agent {
  Vec a;
  double rho;
};

std::vector<Agent> random_agents(Rng& rng, const SyntheticOptions& o) {
  std::vector<Agent> agents(o.M);
  for (auto& ag : agents) {
    ag.a.resize(o.k);
    for (double& v : ag.a) v = rng.uniform(0.2, 1.0);
    ag.rho = rng.uniform(0.2, 0.8);
  }
  return agents;
}

// Point on the face {w.x = c, x >= 0} from Dirichlet-ish weights.
Vec face_point(Rng& rng, const Halfspace& h) {
  Vec lam(h.normal.size());
  double s = 0.0;
  for (double& v : lam) {
    v = -std::log(1.0 - rng.uniform());
    s += v;
  }
  Vec x(lam.size());
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = lam[j] / s * h.level / h.normal[j];
  return x;
}

double dotp(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

// Samples on the face whose mean is x (pairs x +- tau d with w.d = 0).
std::vector<Vec> face_mixture(Rng& rng, const Vec& x, const Vec& w, int pairs) {
  std::vector<Vec> out;
  const std::size_t k = x.size();
  for (int p = 0; p < pairs; ++p) {
    Vec d(k);
    for (double& v : d) v = rng.normal();
    const double proj = dotp(d, w) / dotp(w, w);
    for (std::size_t j = 0; j < k; ++j) d[j] -= proj * w[j];
    double tmax = 1e300;
    for (std::size_t j = 0; j < k; ++j)
      if (d[j] != 0.0) tmax = std::min(tmax, x[j] / std::abs(d[j]));
    const double tau = rng.uniform(0.1, 0.9) * tmax;
    Vec plus(k), minus(k);
    for (std::size_t j = 0; j < k; ++j) {
      plus[j] = std::max(0.0, x[j] + tau * d[j]);
      minus[j] = std::max(0.0, x[j] - tau * d[j]);
    }
    out.push_back(plus);
    out.push_back(minus);
  }
  return out;
}

}  // namespace

RPDataset consistent_dataset(Rng& rng, const SyntheticOptions& o) {
  ConstraintGrid g = random_budgets(rng, o);
  const auto agents = random_agents(rng, o);
  Grid<EmpiricalStrategy> s(o.T);
  for (std::size_t t = 0; t < o.T; ++t) {
    for (std::size_t i = 0; i < o.M; ++i) {
      const Halfspace h = g[t][i].zero_sublevel();
      Vec x = ces_optimum(agents[i].a, agents[i].rho, h.normal, h.level);
      if (o.face_mixtures && o.k >= 2 && rng.uniform() < 0.5) {
        s[t].emplace_back(face_mixture(rng, x, h.normal, 2));
      } else {
        s[t].push_back(EmpiricalStrategy::pure(std::move(x)));
      }
    }
  }
  return RPDataset(std::move(g), std::move(s));
}

RPDataset violating_dataset(Rng& rng, const SyntheticOptions& o, double margin) {
  if (o.k < 2 || o.T < 2) throw std::invalid_argument("a budget reversal needs k >= 2 and T >= 2");
  const RPDataset base = consistent_dataset(rng, o);
  ConstraintGrid g = base.constraints();
  Grid<EmpiricalStrategy> s = base.strategies();
  const std::size_t i = static_cast<std::size_t>(rng.next_u64() % o.M);
  const std::size_t t = static_cast<std::size_t>(rng.next_u64() % o.T);
  std::size_t u = static_cast<std::size_t>(rng.next_u64() % (o.T - 1));
  if (u >= t) ++u;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const Halfspace ht = g[t][i].zero_sublevel(), hu = g[u][i].zero_sublevel();
    for (int tries = 0; tries < 200; ++tries) {
      const Vec xt = face_point(rng, ht), xu = face_point(rng, hu);
      if (g[u][i](xt) < -margin && g[t][i](xu) < -margin) {
        s[t][i] = EmpiricalStrategy::pure(xt);
        s[u][i] = EmpiricalStrategy::pure(xu);
        return RPDataset(std::move(g), std::move(s));
      }
    }
    // Budgets nested: redraw both as affine ones.
    for (std::size_t p : {t, u}) {
      Vec w(o.k);
      for (double& v : w) v = rng.uniform(0.2, 1.2);
      g[p][i] = ConstraintFunction::affine(w, rng.uniform(0.5, 1.5));
      s[p][i] = EmpiricalStrategy::pure(face_point(rng, g[p][i].zero_sublevel()));
    }
  }
  throw std::runtime_error("could not inject a budget reversal (k=" + std::to_string(o.k) + ", t=" + std::to_string(t) + ", u=" + std::to_string(u) + ")");
}

double bottleneck_gap_agent(const RPDataset& d, std::size_t agent) {
  const std::size_t T = d.T();
  const double neg_inf = -1e300;
  std::vector<std::vector<double>> C(T, std::vector<double>(T, neg_inf));
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t s = 0; s < T; ++s) C[t][s] = -d.gbar(t, s, agent);
  for (std::size_t m = 0; m < T; ++m)
    for (std::size_t a = 0; a < T; ++a)
      for (std::size_t b = 0; b < T; ++b) C[a][b] = std::max(C[a][b], std::min(C[a][m], C[m][b]));
  double L = 0.0;
  for (std::size_t t = 0; t < T; ++t) L = std::max(L, C[t][t]);
  return L;
}

double bottleneck_gap(const RPDataset& d) {
  double L = 0.0;
  for (std::size_t i = 0; i < d.M(); ++i) L = std::max(L, bottleneck_gap_agent(d, i));
  return L;
}

RPDataset random_dataset(Rng& rng, bool violate) {
  SyntheticOptions o;
  o.T = 2 + rng.next_u64() % 5;  // 2..6
  o.M = 1 + rng.next_u64() % 3;  // 1..3
  o.k = violate ? 2 + rng.next_u64() % 2 : 1 + rng.next_u64() % 3;
  o.face_mixtures = o.k >= 2 && rng.uniform() < 0.3;
  return violate ? violating_dataset(rng, o) : consistent_dataset(rng, o);
}

double pinned_lp_gap(const RPDataset& d, const Grid<double>& u, const Grid<double>& lambda,
                     const Grid<Vec>& phi, double tol) {
  const std::size_t T = d.T(), M = d.M(), n = 2 * T * M;
  // x = [u (t-major), lambda (t-major)], both pinned by their bounds.
  Vec lo(n), hi(n);
  double scale = 0.0;
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t i = 0; i < M; ++i) {
      lo[t * M + i] = hi[t * M + i] = u[t][i];
      lo[T * M + t * M + i] = hi[T * M + t * M + i] = lambda[t][i];
      scale = std::max(scale, std::abs(u[t][i]) / lambda[t][i]);
    }
  std::vector<double> g(T * T * M);
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t s = 0; s < T; ++s)
      for (std::size_t i = 0; i < M; ++i) {
        g[(t * T + s) * M + i] = d.constraint(t, i)(phi[s][i]);
        scale = std::max(scale, std::abs(g[(t * T + s) * M + i]));
      }
  auto feasible_at = [&](double r) {
    lp::Matrix A;
    Vec b;
    for (std::size_t t = 0; t < T; ++t)
      for (std::size_t s = 0; s < T; ++s)
        for (std::size_t i = 0; i < M; ++i) {
          Vec row(n, 0.0);
          row[s * M + i] += 1.0;
          row[t * M + i] -= 1.0;
          row[T * M + t * M + i] = -(g[(t * T + s) * M + i] + r);
          A.push_back(std::move(row));
          b.push_back(0.0);
        }
    return lp::feasible(A, b, lo, hi).ok();
  };
  double a = 0.0, z = 4.0 * scale + 1.0;
  if (feasible_at(0.0)) return 0.0;
  while (z - a > tol) {
    const double mid = 0.5 * (a + z);
    (feasible_at(mid) ? z : a) = mid;
  }
  return z;
}

dro::PsiVector random_psi(Rng& rng, std::size_t T, std::size_t M, const dro::PsiBox& box) {
  dro::PsiVector p = dro::PsiVector::constant(T, M, 0.0, 1.0);
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t i = 0; i < M; ++i) {
      p.u[t][i] = rng.uniform(-box.u_hi, box.u_hi);
      p.lambda[t][i] = rng.uniform(box.lam_lo, box.lam_hi);
    }
  return p;
}

dro::Scenario random_scenario(Rng& rng, const RPDataset& d) {
  dro::Scenario phi(d.T());
  for (std::size_t t = 0; t < d.T(); ++t)
    for (std::size_t i = 0; i < d.M(); ++i) {
      const BudgetSet set(d.constraint(t, i));
      Vec y(d.k());
      for (std::size_t j = 0; j < y.size(); ++j) y[j] = rng.uniform() * set.level() / set.normal()[j];
      phi[t].push_back(set.project(y));
    }
  return phi;
}

RPDataset small_consumers(std::uint64_t seed, std::size_t T, std::size_t N) {
  dro::ConsumerOptions o;
  o.T = T;
  o.N = N;
  o.seed = seed;
  return dro::consumer_instance(o);
}

}  // namespace pforge::synth
