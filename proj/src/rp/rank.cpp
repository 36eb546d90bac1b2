#include "pforge/rp/rank.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pforge::rp {

void PreferenceProfile::validate() const {
  const std::size_t D = outcomes();
  if (D == 0) throw std::invalid_argument("profile needs at least one outcome");
  if (rankings.empty()) throw std::invalid_argument("profile needs at least one agent");
  for (const auto& r : rankings) {
    if (r.size() != D) throw std::invalid_argument("ranking length differs from D");
    std::vector<char> seen(D, 0);
    for (std::size_t o : r) {
      if (o >= D || seen[o]) throw std::invalid_argument("ranking is not a permutation");
      seen[o] = 1;
    }
  }
  for (std::size_t p = 1; p < D; ++p)
    if (U[p] > U[p - 1]) throw std::invalid_argument("utility levels must be weakly decreasing");
}

std::vector<std::vector<std::size_t>> PreferenceProfile::positions() const {
  std::vector<std::vector<std::size_t>> pos(rankings.size(), std::vector<std::size_t>(outcomes()));
  for (std::size_t j = 0; j < rankings.size(); ++j)
    for (std::size_t p = 0; p < outcomes(); ++p) pos[j][rankings[j][p]] = p;
  return pos;
}

std::vector<std::vector<int>> k_ranks(const PreferenceProfile& p) {
  p.validate();
  const std::size_t D = p.outcomes();
  const auto pos = p.positions();
  std::vector<std::vector<int>> rnk(D, std::vector<int>(D, 0));
  for (std::size_t k = 1; k <= D; ++k)
    for (std::size_t o = 0; o < D; ++o)
      for (const auto& pj : pos) rnk[k - 1][o] += pj[o] < k;
  return rnk;
}

double social_welfare(const PreferenceProfile& p, std::size_t outcome) {
  double w = 0.0;
  for (const auto& r : p.rankings) {
    const auto it = std::find(r.begin(), r.end(), outcome);
    if (it == r.end()) throw std::invalid_argument("outcome not ranked");
    w += p.U[static_cast<std::size_t>(it - r.begin())];
  }
  return w;
}

bool rank_optimality_check(const PreferenceProfile& p, const std::vector<double>& strategy) {
  const std::size_t D = p.outcomes();
  if (strategy.size() != D) throw std::invalid_argument("strategy length differs from D");
  double total = 0.0;
  for (double a : strategy) {
    if (!(a >= 0.0)) throw std::invalid_argument("strategy has a negative weight");
    total += a;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("strategy does not sum to 1");
  const auto rnk = k_ranks(p);
  for (std::size_t k = 0; k < D; ++k) {
    const int best = *std::max_element(rnk[k].begin(), rnk[k].end());
    double expect = 0.0;
    for (std::size_t o = 0; o < D; ++o) expect += strategy[o] * rnk[k][o];
    if (std::abs(expect - best) > 1e-9) return false;
  }
  return true;
}

}  // namespace pforge::rp
