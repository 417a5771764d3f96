#pragma once

#include <cstddef>
#include <vector>

#include "softedge/estimators.hpp"

namespace softedge {

/// Density of a small-N observable on a uniform grid, with its cumulative distribution.
struct OracleCurve {
  Curve density;
  std::vector<double> cdf;

  /// CDF at x by cubic Hermite interpolation (density as derivative); 0 left of the grid, mass() right of it.
  double cdf_at(double x) const;
  /// Integral of the density over the grid.
  double mass() const { return cdf.empty() ? 0.0 : cdf.back(); }
};

/**
 * Deterministic quadrature of the joint eigenvalue law at N = 2 or 3 for gap, dos or
 * lambda-max (nested 20-point Gauss-Legendre panels; absolute accuracy ~1e-10).
 * Distances are tabulated on [0, r_max], lambda_max on [-r_max/2, r_max].
 * `points` grid nodes (>= 5). Throws std::invalid_argument for other N or observables.
 */
OracleCurve small_n_oracle(double beta, std::size_t n, Observable observable,
                           std::size_t points = 241, double r_max = 0.0);

/// Default tabulation range: wide enough that the omitted mass is below 1e-12.
double default_oracle_range(double beta, std::size_t n);

}  // namespace softedge
