#include "pforge/rp/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pforge::rp {

double hoeffding_confidence(double eps, std::size_t N, std::size_t T, std::size_t M, double G,
                            double c) {
  (void)c;
  if (!(eps >= 0.0)) throw std::invalid_argument("eps must be >= 0");
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  if (!(G > 0.0)) throw std::invalid_argument("G must be > 0");
  const double tail = 2.0 * std::exp(-2.0 * eps * eps * static_cast<double>(N) / (G * G));
  const double base = std::max(1.0 - tail, 0.0);
  const double power = static_cast<double>(T) * static_cast<double>(T) * static_cast<double>(M);
  // log1p keeps precision when the tail is tiny.
  if (base <= 0.0) return 0.0;
  return std::exp(power * std::log1p(-tail));
}

}  // namespace pforge::rp
