#include "softedge/oracle.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "softedge/grid_calculus.hpp"
#include "softedge/sampler.hpp"

namespace softedge {

namespace {

constexpr double kPanel = 1.0;

// Half-width (in units of 1/sqrt(beta)) beyond which the Gaussian weight is below e^-40.
double reach(double beta) { return 9.0 / std::sqrt(beta); }

double integrate(const std::function<double(double)>& f, double a, double b) {
  return b > a ? integrate_panels(f, a, b, kPanel) : 0.0;
}

}  // namespace

double OracleCurve::cdf_at(double x) const {
  const auto& xs = density.x;
  if (xs.empty() || x <= xs.front()) return 0.0;
  if (x >= xs.back()) return cdf.back();
  const double h = xs[1] - xs[0];
  auto k = static_cast<std::size_t>((x - xs.front()) / h);
  if (k + 1 >= xs.size()) k = xs.size() - 2;
  const double t = (x - xs[k]) / h;
  return hermite(cdf[k], density.y[k], cdf[k + 1], density.y[k + 1], h, t);
}

double default_oracle_range(double beta, std::size_t n) {
  return (n == 3 ? 14.0 : 12.0) / std::sqrt(beta);
}

OracleCurve small_n_oracle(double beta, std::size_t n, Observable observable, std::size_t points,
                           double r_max) {
  if (!(beta > 0.0)) throw std::invalid_argument("small_n_oracle: beta must be positive");
  if (n != 2 && n != 3) throw std::invalid_argument("small_n_oracle: only N = 2 or 3 supported");
  if (observable == Observable::density) {
    throw std::invalid_argument("small_n_oracle: observable must be gap, dos or lambda-max");
  }
  if (points < 5) throw std::invalid_argument("small_n_oracle: need at least 5 grid points");
  if (r_max <= 0.0) r_max = default_oracle_range(beta, n);

  const double w = reach(beta);
  auto p2 = [beta](double a, double b) {
    const std::array<double, 2> l{a, b};
    return std::exp(log_joint_density(l, beta));
  };
  auto p3 = [beta](double a, double b, double c) {
    const std::array<double, 3> l{a, b, c};
    return std::exp(log_joint_density(l, beta));
  };

  // Densities of ordered eigenvalues: N! times the symmetric joint density.
  std::function<double(double)> value;
  if (n == 2) {
    if (observable == Observable::lambda_max) {
      value = [&](double a) {
        return 2.0 * integrate([&](double b) { return p2(a, b); }, -w, a);
      };
    } else {
      value = [&](double r) {
        return 2.0 * integrate([&](double c) { return p2(c + 0.5 * r, c - 0.5 * r); }, -w, w);
      };
    }
  } else {
    auto gap = [&](double r) {
      return 6.0 * integrate(
                       [&](double b) {
                         return integrate([&](double c) { return p3(b + r, b, c); }, -w, b);
                       },
                       -w, w - r);
    };
    auto outer_distance = [&](double r) {
      return 6.0 * integrate(
                       [&](double c) {
                         return integrate([&](double b) { return p3(c + r, b, c); }, c, c + r);
                       },
                       -w, w - r);
    };
    if (observable == Observable::gap) {
      value = gap;
    } else if (observable == Observable::dos) {
      value = [&](double r) { return 0.5 * (gap(r) + outer_distance(r)); };
    } else {
      value = [&](double a) {
        return 6.0 * integrate(
                         [&](double b) {
                           return integrate([&](double c) { return p3(a, b, c); }, -w, b);
                         },
                         -w, a);
      };
    }
  }

  const double lo = observable == Observable::lambda_max ? -0.5 * r_max : 0.0;
  const double h = (r_max - lo) / static_cast<double>(points - 1);
  OracleCurve out;
  out.density.x.resize(points);
  out.density.y.resize(points);
  out.density.stderr.assign(points, 0.0);
  for (std::size_t i = 0; i < points; ++i) {
    const double x = lo + h * static_cast<double>(i);
    out.density.x[i] = x;
    out.density.y[i] = (x == 0.0 && observable != Observable::lambda_max) ? 0.0 : value(x);
  }
  const auto from_right = cumulative_from_right(out.density.y, h);
  out.cdf.resize(points);
  for (std::size_t i = 0; i < points; ++i) out.cdf[i] = from_right.front() - from_right[i];
  return out;
}

}  // namespace softedge
