#pragma once

namespace softedge {

/// Semicircle (1/pi) sqrt(2 - x^2) on |x| <= sqrt(2), zero outside.
double wigner(double x);

/// Bulk DOS scaling function (1/pi) sqrt(x (2 sqrt(2) - x)) on [0, 2 sqrt(2)], zero outside.
double shifted_wigner(double x);

/**
 * Soft-edge density scaling function of the Gaussian beta-ensemble for beta in {1, 2, 4}.
 * Throws std::invalid_argument for any other beta.
 */
double edge_density(double beta, double x);

}  // namespace softedge
