#include "pforge/rp/afriat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pforge/lp/lp.hpp"

namespace pforge::rp {

namespace {

// Upper bounds on lambda / alpha. The system is a cone, so without a cap phase 1
// can stop on vertices with lambda ~ 1e13 whose round-off breaks the residual
// check. Close to the threshold L the needed ratio grows like 1/(r - L), so an
// "infeasible" from the tight cap is re-checked under the wide one; only if that
// solve fails numerically does the tight verdict stand, which moves the threshold
// by about 1e-6 of the gbar scale at most.
constexpr double kTightCap = 1e6;
constexpr double kWideCap = 1e10;

lp::LPResult solve_agent(const RPDataset& d, std::size_t agent, double r, double alpha,
                         double cap) {
  const std::size_t T = d.T();
  // The LP works in mu = S lambda with S the largest |gbar + r|, so the lambda columns have
  // entries of order one like the u columns. Budgets with gbar ~ 1e4 broke the simplex otherwise.
  double S = 1.0;
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t s = 0; s < T; ++s) S = std::max(S, std::abs(d.gbar(t, s, agent) + r));
  // x = [u_0 .. u_{T-1}, mu_0 .. mu_{T-1}]; u_0 pinned to 0 (utilities are shift-free).
  lp::LinearProgram prog;
  prog.c.assign(2 * T, 0.0);
  prog.lower.assign(2 * T, -lp::kInf);
  prog.upper.assign(2 * T, lp::kInf);
  prog.lower[0] = prog.upper[0] = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    prog.lower[T + t] = S * alpha;
    prog.upper[T + t] = S * cap * alpha;
    // Any feasible point will do; min sum(lambda) keeps the vertex well scaled.
    prog.c[T + t] = 1.0;
  }
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t s = 0; s < T; ++s) {
      if (s == t) continue;  // checked by the caller
      lp::Vec row(2 * T, 0.0);
      row[s] += 1.0;
      row[t] -= 1.0;
      row[T + t] = -(d.gbar(t, s, agent) + r) / S;
      prog.A.push_back(std::move(row));
      prog.b.push_back(0.0);
    }
  }
  lp::LPResult res = lp::solve(prog);
  if (res.status == lp::Status::Optimal)
    for (std::size_t t = 0; t < T; ++t) res.x[T + t] /= S;
  return res;
}

}  // namespace

std::optional<AgentCertificate> afriat_feasible_agent(const RPDataset& d, std::size_t agent,
                                                      double r, double alpha) {
  if (!(r >= 0.0)) throw std::invalid_argument("relaxation r must be >= 0");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  if (agent >= d.M()) throw std::out_of_range("agent index out of range");
  // The t = s rows read lambda_t (gbar_tt + r) >= 0 and hold for every lambda > 0 iff
  // r >= -gbar_tt. In the LP they become rows with a single round-off sized entry when play
  // sits on the budget boundary, so they are tested here, to the LP's residual tolerance.
  for (std::size_t t = 0; t < d.T(); ++t)
    if (d.gbar(t, t, agent) + r < -kTolLp) return std::nullopt;
  const lp::LPResult tight = solve_agent(d, agent, r, alpha, kTightCap);
  lp::LPResult res = tight;
  if (tight.status != lp::Status::Optimal) {
    res = solve_agent(d, agent, r, alpha, kWideCap);
    if (res.status == lp::Status::NumericalFailure && tight.status == lp::Status::Infeasible) {
      return std::nullopt;
    }
  }
  if (res.status == lp::Status::Infeasible) return std::nullopt;
  if (res.status != lp::Status::Optimal) {
    throw std::runtime_error("Afriat LP failed for agent " + std::to_string(agent) + " at r = " +
                             std::to_string(r) + ": " + std::string(lp::to_string(res.status)));
  }
  const std::size_t T = d.T();
  AgentCertificate cert;
  cert.u.assign(res.x.begin(), res.x.begin() + static_cast<long>(T));
  cert.lambda.assign(res.x.begin() + static_cast<long>(T), res.x.end());
  return cert;
}

namespace {

ParetoCertificate assemble(const RPDataset& d, const std::vector<AgentCertificate>& agents,
                           double r, double alpha) {
  ParetoCertificate c;
  c.r = r;
  c.alpha = alpha;
  c.u.assign(d.T(), std::vector<double>(d.M()));
  c.lambda.assign(d.T(), std::vector<double>(d.M()));
  for (std::size_t i = 0; i < d.M(); ++i)
    for (std::size_t t = 0; t < d.T(); ++t) {
      c.u[t][i] = agents[i].u[t];
      c.lambda[t][i] = agents[i].lambda[t];
    }
  return c;
}

double agent_upper(const RPDataset& d, std::size_t agent) {
  double m = 0.0;
  for (std::size_t t = 0; t < d.T(); ++t)
    for (std::size_t s = 0; s < d.T(); ++s) m = std::max(m, -d.gbar(t, s, agent));
  return m;
}

}  // namespace

std::optional<ParetoCertificate> afriat_feasible(const RPDataset& d, double r, double alpha) {
  std::vector<AgentCertificate> agents;
  for (std::size_t i = 0; i < d.M(); ++i) {
    auto c = afriat_feasible_agent(d, i, r, alpha);
    if (!c) return std::nullopt;
    agents.push_back(std::move(*c));
  }
  return assemble(d, agents, r, alpha);
}

double agent_pareto_gap(const RPDataset& d, std::size_t agent, double alpha, double tol_r,
                        AgentCertificate* cert, int* iters) {
  if (!(tol_r > 0.0)) throw std::invalid_argument("tol_r must be > 0");
  int n = 0;
  auto at_zero = afriat_feasible_agent(d, agent, 0.0, alpha);
  if (at_zero) {
    if (cert) *cert = std::move(*at_zero);
    if (iters) *iters = 0;
    return 0.0;
  }
  double lo = 0.0, hi = agent_upper(d, agent);
  // u = 0 is a witness at hi; the LP is still asked so the certificate comes from one place.
  auto best = afriat_feasible_agent(d, agent, hi, alpha);
  if (!best) {
    best = AgentCertificate{std::vector<double>(d.T(), 0.0), std::vector<double>(d.T(), alpha)};
  }
  while (hi - lo > tol_r) {
    const double mid = 0.5 * (lo + hi);
    ++n;
    auto c = afriat_feasible_agent(d, agent, mid, alpha);
    if (c) {
      hi = mid;
      best = std::move(c);
    } else {
      lo = mid;
    }
  }
  if (cert) *cert = std::move(*best);
  if (iters) *iters = n;
  return hi;
}

GapResult pareto_gap(const RPDataset& d, double alpha, double tol_r) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  GapResult out;
  std::vector<AgentCertificate> agents(d.M());
  for (std::size_t i = 0; i < d.M(); ++i) {
    int n = 0;
    out.per_agent_gaps.push_back(agent_pareto_gap(d, i, alpha, tol_r, &agents[i], &n));
    out.bisection_iters = std::max(out.bisection_iters, n);
  }
  out.gap = *std::max_element(out.per_agent_gaps.begin(), out.per_agent_gaps.end());
  out.certificate = assemble(d, agents, out.gap, alpha);
  return out;
}

GapResult empirical_pareto_gap(const RPDataset& d, double alpha, double tol_r) {
  return pareto_gap(d, alpha, tol_r);
}

}  // namespace pforge::rp
