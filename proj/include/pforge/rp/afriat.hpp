#pragma once

#include <optional>
#include <vector>

#include "pforge/core/dataset.hpp"
#include "pforge/core/tolerances.hpp"

namespace pforge::rp {

struct AgentCertificate {
  std::vector<double> u;       // [t]
  std::vector<double> lambda;  // [t]
};

struct GapResult {
  double gap = 0.0;
  ParetoCertificate certificate;
  std::vector<double> per_agent_gaps;
  int bisection_iters = 0;
};

// Feasibility of the relaxed Afriat system of one agent:
//   u_s - u_t - lambda_t * gbar[t][s] <= lambda_t * r,   lambda_t >= alpha.
// Throws std::runtime_error if the LP backend fails numerically.
std::optional<AgentCertificate> afriat_feasible_agent(const RPDataset& d, std::size_t agent,
                                                      double r, double alpha = kDefaultAlpha);

// All agents at once; agents share no variables so this is M independent LPs.
std::optional<ParetoCertificate> afriat_feasible(const RPDataset& d, double r,
                                                 double alpha = kDefaultAlpha);

// Smallest r for which agent's system is feasible, by bisection to tol_r.
// Returns the feasible end of the final bracket together with its certificate.
double agent_pareto_gap(const RPDataset& d, std::size_t agent, double alpha, double tol_r,
                        AgentCertificate* cert = nullptr, int* iters = nullptr);

GapResult pareto_gap(const RPDataset& d, double alpha = kDefaultAlpha, double tol_r = kTolR);

// Same computation; the dataset's gbar already holds sample means, so this is L-hat.
GapResult empirical_pareto_gap(const RPDataset& d, double alpha = kDefaultAlpha,
                               double tol_r = kTolR);

}  // namespace pforge::rp
