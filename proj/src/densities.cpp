#include "softedge/densities.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "softedge/airy.hpp"

namespace softedge {

double wigner(double x) {
  const double d = 2.0 - x * x;
  return d > 0.0 ? std::sqrt(d) / std::numbers::pi : 0.0;
}

double shifted_wigner(double x) {
  const double d = x * (2.0 * std::numbers::sqrt2 - x);
  return d > 0.0 ? std::sqrt(d) / std::numbers::pi : 0.0;
}

double edge_density(double beta, double x) {
  if (beta == 2.0) {
    const AiryValues a = airy(x);
    return a.ai_prime * a.ai_prime - x * a.ai * a.ai;
  }
  if (beta == 1.0) {
    const AiryValues a = airy(x);
    return a.ai_prime * a.ai_prime - x * a.ai * a.ai + 0.5 * a.ai * (1.0 - airy_integral(x));
  }
  if (beta == 4.0) {
    const double kappa = std::cbrt(4.0);
    const double z = kappa * x;
    const AiryValues a = airy(z);
    return (a.ai_prime * a.ai_prime - z * a.ai * a.ai - 0.5 * a.ai * airy_integral(z)) /
           std::sqrt(kappa);
  }
  std::ostringstream msg;
  msg << "edge_density: no closed form for beta = " << beta << " (supported: 1, 2, 4)";
  throw std::invalid_argument(msg.str());
}

}  // namespace softedge
