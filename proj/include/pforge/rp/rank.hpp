#pragma once

#include <cstddef>
#include <vector>

namespace pforge::rp {

// M strict rankings over outcomes {0..D-1}; rankings[j][p] is agent j's outcome at
// position p (p = 0 is the favourite). Every agent values position p at U[p].
struct PreferenceProfile {
  std::vector<std::vector<std::size_t>> rankings;
  std::vector<double> U;

  std::size_t outcomes() const { return U.size(); }
  // Throws std::invalid_argument unless each ranking is a permutation and U is weakly decreasing.
  void validate() const;
  // position[j][o]
  std::vector<std::vector<std::size_t>> positions() const;
};

// rnk_k(o) = #{j : o sits in agent j's top k}, k = 1..D; returned as [k-1][o].
std::vector<std::vector<int>> k_ranks(const PreferenceProfile& p);

// Sum of utilities of outcome o.
double social_welfare(const PreferenceProfile& p, std::size_t outcome);

// True iff E_a[rnk_k] equals max_o rnk_k(o) for every k (within 1e-9).
bool rank_optimality_check(const PreferenceProfile& p, const std::vector<double>& strategy);

}  // namespace pforge::rp
