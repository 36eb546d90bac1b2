#include "pforge/rp/utility.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace pforge::rp {

double ReconstructedUtility::operator()(VecView x) const {
  double v = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < g_.size(); ++s) v = std::min(v, u_[s] + lambda_[s] * g_[s](x));
  return v;
}

ReconstructedUtility reconstruct_utility(const ParetoCertificate& cert, const RPDataset& d,
                                         std::size_t agent) {
  if (agent >= d.M()) throw std::out_of_range("agent index out of range");
  if (!validate_certificate(d, cert)) throw std::invalid_argument("certificate does not validate");
  ReconstructedUtility U;
  U.agent_ = agent;
  for (std::size_t s = 0; s < d.T(); ++s) {
    U.u_.push_back(cert.u[s][agent]);
    U.lambda_.push_back(cert.lambda[s][agent]);
    U.g_.push_back(d.constraint(s, agent));
  }
  return U;
}

double expected_utility(const ReconstructedUtility& U, const EmpiricalStrategy& s) {
  double sum = 0.0;
  for (const auto& x : s.samples()) sum += U(x);
  return sum / static_cast<double>(s.size());
}

}  // namespace pforge::rp
