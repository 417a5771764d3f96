#pragma once

#include <span>
#include <vector>

#include "softedge/edge_table.hpp"

namespace softedge {

/// 2^{-1/6} sqrt(pi): normalization of f~ at +infinity.
double f_tilde_normalization();

/**
 * Solution of f'' - (x + 2 q^2) f = -r f with f ~ c Ai(x - r) as x -> +inf, on the
 * grid of an EdgeTable. `overlap` holds J(x) = int_x^inf q f (Airy tail included).
 */
struct FTildeSolution {
  double r_tilde = 0.0;
  std::vector<double> values;
  std::vector<double> derivative;
  std::vector<double> overlap;

  /// Cubic Hermite interpolation of f, f' and J at x (same grid as the table).
  struct Point {
    double f;
    double f_prime;
    double overlap;
  };
  Point at(const EdgeTable& table, double x) const;

  /// Largest |f'' - (x + 2q^2 - r) f| / max(1, |f|) over interior nodes.
  double max_relative_residual(const EdgeTable& table) const;
};

/**
 * Integrates the f~ equation downward from x_max with Numerov's method.
 * Throws std::out_of_range when r_tilde > x_max - 4 (the Airy start value is no longer
 * in the decaying region) or |r_tilde| > 40.
 */
FTildeSolution solve_f_tilde(double r_tilde, const EdgeTable& table);

/// Same with an explicit potential array q (size of the table grid); q = 0 gives c Ai(x - r).
FTildeSolution solve_f_tilde_with_potential(double r_tilde, const EdgeTable& table,
                                            std::span<const double> q);

/// g~(r, x) = -(r / q(x)) int_x^inf q f~ on the grid.
std::vector<double> g_tilde(double r_tilde, const EdgeTable& table, const FTildeSolution& f);

/**
 * (2^{1/3}/pi) int [f~(s,x)^2 - (int_x^inf q f~(s,.))^2] F2(x) dx.
 * The common integral behind the averaged DOS (s = r) and gap (s = -r) scaling functions.
 */
double edge_bracket_integral(double s, const EdgeTable& table);

/// Exact GUE edge DOS scaling function rho~_edge(r).
double rho_edge_exact(double r_tilde, const EdgeTable& table);

/// Exact GUE typical-gap density p~_typ(r).
double p_typ_exact(double r_tilde, const EdgeTable& table);

/**
 * DOS scaling function conditioned on the rescaled largest eigenvalue x.
 * Normalized so that int rho~(r|x) F2'(x) dx = rho~_edge(r).
 * Throws std::out_of_range when x is outside the table.
 */
double rho_edge_conditional(double r_tilde, double x, const EdgeTable& table);

/**
 * Gap density conditioned on the rescaled largest eigenvalue x; integrates to 1 over r.
 * Uses f~(-r, .) and all table quantities at x - r, which must lie on the grid.
 */
double p_typ_conditional(double r_tilde, double x, const EdgeTable& table);

}  // namespace softedge
