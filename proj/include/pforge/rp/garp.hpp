#pragma once

#include <vector>

#include "pforge/core/dataset.hpp"
#include "pforge/core/tolerances.hpp"

namespace pforge::rp {

using BoolMatrix = std::vector<std::vector<char>>;

// Reflexive-transitive closure by Floyd-Warshall.
BoolMatrix transitive_closure(BoolMatrix rel);

enum class MmGarpForm {
  Standard,  // k H j  =>  gbar[j][k] >= gbar[j][j]
  Printed,   // k R j  =>  gbar[j][k] >= gbar[k][k]
};

bool mm_garp(const RPDataset& d, MmGarpForm form = MmGarpForm::Standard);
bool mm_garp_agent(const RPDataset& d, std::size_t agent, MmGarpForm form = MmGarpForm::Standard);

// GARP_F on the shifted budgets gbar + 1.
bool garp_f(const RPDataset& d, double F);
bool garp_f_agent(const RPDataset& d, std::size_t agent, double F);
// Smallest F (to tol) at which garp_f passes; garp_f is monotone in F.
double garp_f_threshold(const RPDataset& d, double tol = 1e-4);

// GARP at common efficiency e on the shifted budgets.
bool garp_e_agent(const RPDataset& d, std::size_t agent, double e);
// Largest e in [0, 1] (to tol_e) at which garp_e passes.
double ccei_scalar(const RPDataset& d, std::size_t agent, double tol_e = 1e-6);

}  // namespace pforge::rp
