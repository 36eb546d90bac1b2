#include "pforge/rp/garp.hpp"

#include <stdexcept>

namespace pforge::rp {

BoolMatrix transitive_closure(BoolMatrix rel) {
  const std::size_t n = rel.size();
  for (std::size_t k = 0; k < n; ++k) {
    rel[k][k] = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (!rel[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (rel[k][j]) rel[i][j] = 1;
    }
  }
  return rel;
}

namespace {

void check_agent(const RPDataset& d, std::size_t agent) {
  if (agent >= d.M()) throw std::out_of_range("agent index out of range");
}

}  // namespace

bool mm_garp_agent(const RPDataset& d, std::size_t agent, MmGarpForm form) {
  check_agent(d, agent);
  const std::size_t T = d.T();
  BoolMatrix R(T, std::vector<char>(T, 0));
  for (std::size_t k = 0; k < T; ++k)
    for (std::size_t j = 0; j < T; ++j) R[k][j] = d.gbar(k, j, agent) <= d.gbar(k, k, agent);
  if (form == MmGarpForm::Printed) {
    for (std::size_t k = 0; k < T; ++k)
      for (std::size_t j = 0; j < T; ++j)
        if (R[k][j] && d.gbar(j, k, agent) < d.gbar(k, k, agent)) return false;
    return true;
  }
  const BoolMatrix H = transitive_closure(R);
  for (std::size_t k = 0; k < T; ++k)
    for (std::size_t j = 0; j < T; ++j)
      if (H[k][j] && d.gbar(j, k, agent) < d.gbar(j, j, agent)) return false;
  return true;
}

bool mm_garp(const RPDataset& d, MmGarpForm form) {
  for (std::size_t i = 0; i < d.M(); ++i)
    if (!mm_garp_agent(d, i, form)) return false;
  return true;
}

bool garp_f_agent(const RPDataset& d, std::size_t agent, double F) {
  check_agent(d, agent);
  if (!(F >= 0.0)) throw std::invalid_argument("F must be >= 0");
  const std::size_t T = d.T();
  auto gb = [&](std::size_t t, std::size_t s) { return d.gbar(t, s, agent) + 1.0; };
  BoolMatrix R(T, std::vector<char>(T, 0));
  for (std::size_t k = 0; k < T; ++k)
    for (std::size_t j = 0; j < T; ++j) R[k][j] = gb(k, j) + F <= gb(k, k);
  // Closure over R_F itself; the reflexive pairs it adds are harmless since F >= 0.
  const BoolMatrix H = transitive_closure(R);
  for (std::size_t k = 0; k < T; ++k)
    for (std::size_t j = 0; j < T; ++j)
      if (H[k][j] && !(gb(j, j) <= gb(j, k) + F)) return false;
  return true;
}

bool garp_f(const RPDataset& d, double F) {
  for (std::size_t i = 0; i < d.M(); ++i)
    if (!garp_f_agent(d, i, F)) return false;
  return true;
}

double garp_f_threshold(const RPDataset& d, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  if (garp_f(d, 0.0)) return 0.0;
  double lo = 0.0, hi = d.max_negative_gbar() + 2.0;
  while (!garp_f(d, hi)) hi *= 2.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (garp_f(d, mid) ? hi : lo) = mid;
  }
  return hi;
}

bool garp_e_agent(const RPDataset& d, std::size_t agent, double e) {
  check_agent(d, agent);
  const std::size_t T = d.T();
  auto gb = [&](std::size_t t, std::size_t s) { return d.gbar(t, s, agent) + 1.0; };
  BoolMatrix R(T, std::vector<char>(T, 0));
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t s = 0; s < T; ++s) R[t][s] = t != s && e * gb(t, t) >= gb(t, s);
  const BoolMatrix H = transitive_closure(R);
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t s = 0; s < T; ++s)
      if (t != s && H[t][s] && !(e * gb(s, s) <= gb(s, t))) return false;
  return true;
}

double ccei_scalar(const RPDataset& d, std::size_t agent, double tol_e) {
  if (!(tol_e > 0.0 && tol_e < 1.0)) throw std::invalid_argument("tol_e must be in (0, 1)");
  if (garp_e_agent(d, agent, 1.0)) return 1.0;
  if (!garp_e_agent(d, agent, 0.0)) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > tol_e) {
    const double mid = 0.5 * (lo + hi);
    (garp_e_agent(d, agent, mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace pforge::rp
