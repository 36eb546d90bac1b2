#pragma once

#include <cstdint>
#include <vector>

#include "pforge/core/dataset.hpp"

namespace pforge::dro {

// u in [-u_hi, u_hi], lambda in [lam_lo, lam_hi].
struct PsiBox {
  double u_hi = 1.0;
  double lam_lo = 0.1;
  double lam_hi = 1.0;

  // u in [-1, 1], lambda in [lambda_hat, 1].
  static PsiBox standard(double lambda_hat);
  // The same box scaled by 1/lambda_hat, so lambda >= 1. Every h value is unchanged.
  static PsiBox scaled(double lambda_hat);
  void validate() const;
};

struct PsiVector {
  Grid<double> u;       // [t][i]
  Grid<double> lambda;  // [t][i]

  static PsiVector constant(std::size_t T, std::size_t M, double u, double lambda);
  bool in_box(const PsiBox& box) const;
};

using Scenario = Grid<Vec>;  // gamma[t][i]

// The k-th sample of every (t, i).
Scenario sample_scenario(const RPDataset& d, std::size_t k);
// Common sample count N; throws if the strategies disagree.
std::size_t sample_count(const RPDataset& d);

// max(0, max_{t,s,i} (u_s - u_t)/lambda_t - g_t^i(gamma_s^i)); no LP needed for fixed psi.
double h_value(const RPDataset& d, const PsiVector& psi, const Scenario& phi);

// sum_{i,t} min_k ||gamma_t^i - gamma_hat_{t,k}^i|| <= eps.
double nearest_sample_distance(const Scenario& phi, const RPDataset& d);
bool wasserstein_ball_check(const Scenario& phi, const RPDataset& d, double eps);

// sum_{i,t} ||gamma_t^i - gamma_hat_{t,k}^i||.
double scenario_distance(const Scenario& phi, const RPDataset& d, std::size_t k);

// G = |inf_{t,i} g_t^i(0)|.
double g_range(const RPDataset& d);

struct DROConfig {
  double lambda_hat = 0.1;
  PsiBox box = PsiBox::standard(0.1);
  // Size the v box with 2 u_hi / lam_lo alone instead of adding G.
  bool printed_v_bound = false;
  int max_iters = 60;
  // Master: geometric grid over v_{N+1}, refinement rounds, inner subgradient descent.
  int v_grid = 14;
  int v_refine = 2;
  int inner_iters = 600;
  int master_starts = 3;
  double spread_tol = 1e-3;
  // Violation oracle: lattice steps per axis for the coarse grid, ascent starts kept.
  int cv_grid_steps = 20;
  int cv_starts = 3;
  unsigned threads = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

// V' = 2 u_hi / lam_lo + G (or without G under printed_v_bound); h <= V' on Psi x Gamma.
double v_bound(const RPDataset& d, const DROConfig& cfg);
// Upper end of the v_{N+1} box, V'/eps; eps = 0 leaves it unbounded so it is capped at 1e9 V'.
double v_last_bound(const RPDataset& d, const DROConfig& cfg, double eps);

struct Cut {
  Scenario phi;
  double dist = 0.0;    // scenario_distance to sample k
  std::vector<double> g;  // g_t^i(gamma_s^i) at [(t T + s) M + i]
};

Cut make_cut(const RPDataset& d, Scenario phi, std::size_t k);

struct ScenarioSet {
  std::vector<std::vector<Cut>> by_k;  // the accumulated cuts for each sample index
  std::size_t total() const;
};

struct MasterResult {
  PsiVector psi;
  Vec v;  // N + 1 entries
  double objective = 0.0;
  bool spread_warning = false;  // multistart values disagreed by more than spread_tol
};

// Approximate minimizer of eps v_{N+1} + (1/N) sum_k v_k over the cut constraints.
// `warm` (if given) joins the multistart pool.
MasterResult master_solve(const ScenarioSet& cuts, const RPDataset& d, double eps,
                          const DROConfig& cfg, const MasterResult* warm = nullptr);
// Objective of (psi, v_{N+1}) with every v_k set to its smallest admissible value.
double master_objective(const ScenarioSet& cuts, const RPDataset& d, double eps,
                        const PsiVector& psi, double v_last, Vec* v_out = nullptr);

struct Violation {
  double cv = 0.0;
  Scenario phi;
};

// max over Gamma of G_k(psi, v, Phi) - v_k, searched by single-block deviations.
Violation constraint_violation(std::size_t k, const PsiVector& psi, const Vec& v,
                               const RPDataset& d, const DROConfig& cfg, std::uint64_t seed);

struct DROState {
  PsiVector psi_hat;
  Vec v_hat;
  Vec cv;
  int iteration = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  bool certified = false;  // max_k cv_k < delta at exit
  double master_objective = 0.0;
  ScenarioSet cuts;
};

struct TraceRow {
  int iter = 0;
  double max_cv = 0.0;
  double master_objective = 0.0;
  std::size_t n_cuts_total = 0;
};

struct ExchangeResult {
  DROState state;
  std::vector<TraceRow> trace;
};

// Exchange method: violation oracle for every k, append cuts with cv_k > 0, re-solve the
// master; stops at the first round with max_k cv_k < delta. `iteration` counts oracle rounds.
ExchangeResult exchange_loop(const RPDataset& d, double eps, double delta, const DROConfig& cfg);

// max over the printed Gamma_eps of h(psi, Phi).
double robust_gap(const PsiVector& psi, const RPDataset& d, double eps, const DROConfig& cfg);

// log10 of (1/delta + 1)^{2TM+2}.
double log10_iteration_bound(std::size_t T, std::size_t M, double delta);

struct ConsumerOptions {
  std::size_t T = 5;
  std::size_t N = 5;
  double jitter = 0.05;
  std::uint64_t seed = 0;
};

// Three consumers with utilities b1 + b2, b1 + b2^(1/4), b1^(1/4) + b2 on budgets
// <alpha_t^i, x> <= 1, alpha ~ U(0.1, 1.1)^2; samples are the optimum plus projected jitter.
RPDataset consumer_instance(const ConsumerOptions& opts);

}  // namespace pforge::dro
