#include "softedge/grid_calculus.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

namespace softedge {

double integrate_uniform(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  if (n < 2) return 0.0;
  if (n == 2) return 0.5 * h * (f[0] + f[1]);
  if (n == 3) return h / 3.0 * (f[0] + 4.0 * f[1] + f[2]);
  std::size_t intervals = n - 1;
  double tail = 0.0;
  if (intervals % 2 == 1) {
    const std::size_t k = n - 4;
    tail = 3.0 * h / 8.0 * (f[k] + 3.0 * f[k + 1] + 3.0 * f[k + 2] + f[k + 3]);
    intervals -= 3;
  }
  double odd = 0.0, even = 0.0;
  for (std::size_t i = 1; i < intervals; ++i) (i % 2 ? odd : even) += f[i];
  return h / 3.0 * (f[0] + 4.0 * odd + 2.0 * even + f[intervals]) + tail;
}

std::vector<double> cumulative_from_right(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  if (n < 4) {
    for (std::size_t i = n - 1; i-- > 0;) out[i] = out[i + 1] + 0.5 * h * (f[i] + f[i + 1]);
    return out;
  }
  const double w = h / 24.0;
  for (std::size_t i = n - 1; i-- > 0;) {
    double piece;
    if (i == 0) {
      piece = w * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
    } else if (i + 2 == n) {
      piece = w * (9.0 * f[i + 1] + 19.0 * f[i] - 5.0 * f[i - 1] + f[i - 2]);
    } else {
      piece = w * (-f[i - 1] + 13.0 * f[i] + 13.0 * f[i + 1] - f[i + 2]);
    }
    out[i] = out[i + 1] + piece;
  }
  return out;
}

std::vector<double> differentiate_uniform(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  if (n < 5) throw std::invalid_argument("differentiate_uniform: need at least 5 samples");
  std::vector<double> d(n);
  const double s = 1.0 / (12.0 * h);
  d[0] = s * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]);
  d[1] = s * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
  for (std::size_t i = 2; i + 2 < n; ++i) {
    d[i] = s * (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]);
  }
  const std::size_t m = n - 1;
  d[m - 1] = s * (3.0 * f[m] + 10.0 * f[m - 1] - 18.0 * f[m - 2] + 6.0 * f[m - 3] - f[m - 4]);
  d[m] = s * (25.0 * f[m] - 48.0 * f[m - 1] + 36.0 * f[m - 2] - 16.0 * f[m - 3] + 3.0 * f[m - 4]);
  return d;
}

double second_derivative_at(std::span<const double> f, double h, std::size_t i) {
  if (i < 2 || i + 2 >= f.size()) throw std::out_of_range("second_derivative_at: not interior");
  return (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) /
         (12.0 * h * h);
}

double hermite(double f0, double d0, double f1, double d1, double h, double t) {
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  return h00 * f0 + h10 * h * d0 + h01 * f1 + h11 * h * d1;
}

double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        double panel) {
  if (a == b) return 0.0;
  if (b < a) return -integrate_panels(f, b, a, panel);
  const auto count = static_cast<std::size_t>(std::ceil((b - a) / panel));
  const double width = (b - a) / static_cast<double>(count);
  double total = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const double lo = a + width * static_cast<double>(k);
    total += boost::math::quadrature::gauss<double, 20>::integrate(f, lo, lo + width);
  }
  return total;
}

}  // namespace softedge
