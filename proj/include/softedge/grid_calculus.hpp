#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace softedge {

// Fourth-order calculus on uniformly spaced samples.

/// Integral over the whole grid: composite Simpson (3/8 rule on the last panel when odd).
double integrate_uniform(std::span<const double> f, double h);

/// out[i] = integral from x_i to x_last; fourth-order per-interval rule, out.back() == 0.
std::vector<double> cumulative_from_right(std::span<const double> f, double h);

/// First derivative by five-point stencils (one-sided near the ends).
std::vector<double> differentiate_uniform(std::span<const double> f, double h);

/// Second derivative at interior index i (2 <= i < n-2), five-point central stencil.
double second_derivative_at(std::span<const double> f, double h, std::size_t i);

/// Cubic Hermite interpolation on [x0, x0 + h] at offset t in [0, 1].
double hermite(double f0, double d0, double f1, double d1, double h, double t);

/// Integral of f over [a, b] with 20-point Gauss-Legendre panels of width <= panel.
double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        double panel = 0.5);

}  // namespace softedge
