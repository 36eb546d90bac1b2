#pragma once

#include <cstddef>

namespace pforge::rp {

// Lower bound on P(L(theta) <= c + eps) from N samples per strategy when g
// ranges over an interval of length G. Written exactly as
//   prod_{t<T} prod_{i<M} (max{1 - 2 exp(-2 eps^2 N / G^2), 0})^T,
// so the net exponent is T*T*M. c does not enter the expression.
double hoeffding_confidence(double eps, std::size_t N, std::size_t T, std::size_t M, double G,
                            double c = 0.0);

}  // namespace pforge::rp
