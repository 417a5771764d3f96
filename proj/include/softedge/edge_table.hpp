#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace softedge {

/// Raised when the Painleve II Newton iteration fails; carries the final residual norm.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual_norm)
      : std::runtime_error(what), residual_norm_(residual_norm) {}
  double residual_norm() const noexcept { return residual_norm_; }

 private:
  double residual_norm_;
};

struct EdgeTableOptions {
  double x_min = -12.0;
  double x_max = 10.0;
  double step = 1.0 / 512.0;
  int max_newton_iterations = 50;
  double newton_tolerance = 1e-13;
};

/// All tabulated quantities at one abscissa.
struct EdgePoint {
  double q;
  double q_prime;
  double R;
  double I;
  double F2;
};

/**
 * Hastings-McLeod solution q of q'' = 2q^3 + xq on a uniform grid, together with
 * R(x) = int_x^inf q^2, I(x) = int_x^inf q and the GUE Tracy-Widom distribution
 * F2(x) = exp(-int_x^inf (u - x) q(u)^2 du). Immutable once built.
 */
class EdgeTable {
 public:
  const std::vector<double>& x() const noexcept { return x_; }
  const std::vector<double>& q() const noexcept { return q_; }
  const std::vector<double>& q_prime() const noexcept { return q_prime_; }
  const std::vector<double>& R() const noexcept { return R_; }
  const std::vector<double>& I() const noexcept { return I_; }
  const std::vector<double>& F2() const noexcept { return F2_; }
  /// -ln F2, kept separately so ratios of F2 stay accurate far in the left tail.
  const std::vector<double>& minus_log_F2() const noexcept { return minus_log_F2_; }

  std::size_t size() const noexcept { return x_.size(); }
  double step() const noexcept { return step_; }
  double x_min() const noexcept { return x_.front(); }
  double x_max() const noexcept { return x_.back(); }
  int newton_iterations() const noexcept { return newton_iterations_; }

  bool contains(double x) const noexcept { return x >= x_min() && x <= x_max(); }

  /// Cubic Hermite interpolation of every column (derivatives are known in closed form).
  /// Throws std::out_of_range outside [x_min, x_max].
  EdgePoint at(double x) const;

  /// ln F2 interpolated at x.
  double log_F2(double x) const;

  /// Largest |q'' - 2q^3 - xq| over interior nodes, q'' from a five-point stencil.
  double max_ode_residual() const;

  /// Tracy-Widom GUE density F2'(x) = R(x) F2(x) on the grid.
  std::vector<double> tw_density() const;

  /// Interval index k and offset t in [0, 1] with x = x_k + t * step.
  std::pair<std::size_t, double> locate(double x) const;

 private:
  friend EdgeTable build_edge_table(const EdgeTableOptions& options);

  double step_ = 0.0;
  int newton_iterations_ = 0;
  std::vector<double> x_, q_, q_prime_, R_, I_, F2_, minus_log_F2_;
};

/**
 * Solves the Hastings-McLeod boundary-value problem with a fourth-order (Numerov)
 * discretization and Newton's method, q(x_max) = Ai(x_max) and
 * q(x_min) = sqrt(-x_min/2) (1 + 1/(8 x_min^3)).
 * Requires x_min <= -10, x_max >= 8, step <= 1/256 (std::invalid_argument otherwise).
 * Throws ConvergenceError when Newton stalls.
 */
EdgeTable build_edge_table(const EdgeTableOptions& options = {});

/// Moments of the GUE Tracy-Widom law computed from the table by quadrature.
struct TracyWidomMoments {
  double mass;
  double mean;
  double variance;
};
TracyWidomMoments tracy_widom_moments(const EdgeTable& table);

}  // namespace softedge
