#pragma once

#include <cstddef>
#include <vector>

#include "pforge/core/dataset.hpp"

namespace pforge::rp {

// U^i(x) = min_s (u_s^i + lambda_s^i g_s^i(x)), built from a validated certificate.
class ReconstructedUtility {
 public:
  double operator()(VecView x) const;
  std::size_t agent() const { return agent_; }

 private:
  friend ReconstructedUtility reconstruct_utility(const ParetoCertificate&, const RPDataset&,
                                                  std::size_t);
  std::size_t agent_ = 0;
  std::vector<double> u_, lambda_;
  std::vector<ConstraintFunction> g_;
};

// Throws std::invalid_argument if the certificate does not validate at cert.r.
ReconstructedUtility reconstruct_utility(const ParetoCertificate& cert, const RPDataset& d,
                                         std::size_t agent);

// Expected value of U over an empirical strategy.
double expected_utility(const ReconstructedUtility& U, const EmpiricalStrategy& s);

}  // namespace pforge::rp
