#include "softedge/scaling_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "softedge/airy.hpp"
#include "softedge/grid_calculus.hpp"

namespace softedge {

namespace {

constexpr double kMaxAbsSpectral = 40.0;
constexpr double kRightMargin = 4.0;

double prefactor() { return std::cbrt(2.0) / std::numbers::pi; }

// int_X^inf Ai(u) Ai(u - s) du via the Wronskian of the two Airy equations.
double airy_product_tail(double x, double s) {
  const AiryValues a = airy(x);
  if (std::abs(s) < 1e-8) return a.ai_prime * a.ai_prime - x * a.ai * a.ai;
  const AiryValues b = airy(x - s);
  return (a.ai * b.ai_prime - a.ai_prime * b.ai) / s;
}

void check_spectral(double s, const EdgeTable& table) {
  if (!std::isfinite(s) || std::abs(s) > kMaxAbsSpectral || s > table.x_max() - kRightMargin) {
    std::ostringstream msg;
    msg << "f~ spectral parameter " << s << " outside the supported range (-"
        << kMaxAbsSpectral << ", " << table.x_max() - kRightMargin << "]";
    throw std::out_of_range(msg.str());
  }
}

// The bracket of the conditional formulas at one abscissa y, written without 1/s:
// R((s + R/q^2) f^2 + 2 s q' f J / q^2 + s^2 J^2 / q^2 + s J^2) - J^2.
double local_bracket(double s, double q, double q_prime, double R, double f, double J) {
  const double q2 = q * q;
  return R * ((s + R / q2) * f * f + 2.0 * s * q_prime * f * J / q2 + s * s * J * J / q2 +
              s * J * J) -
         J * J;
}

}  // namespace

double f_tilde_normalization() { return std::pow(2.0, -1.0 / 6.0) * std::sqrt(std::numbers::pi); }

FTildeSolution solve_f_tilde(double r_tilde, const EdgeTable& table) {
  return solve_f_tilde_with_potential(r_tilde, table, table.q());
}

FTildeSolution solve_f_tilde_with_potential(double r_tilde, const EdgeTable& table,
                                            std::span<const double> q) {
  check_spectral(r_tilde, table);
  const std::size_t n = table.size();
  if (q.size() != n) throw std::invalid_argument("solve_f_tilde: potential size mismatch");
  const auto& x = table.x();
  const double h = table.step();
  const double k = h * h / 12.0;
  const double c = f_tilde_normalization();

  std::vector<double> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = 1.0 - k * (x[i] + 2.0 * q[i] * q[i] - r_tilde);

  FTildeSolution sol;
  sol.r_tilde = r_tilde;
  auto& f = sol.values;
  f.assign(n, 0.0);
  f[n - 1] = c * airy_ai(x[n - 1] - r_tilde);
  f[n - 2] = c * airy_ai(x[n - 2] - r_tilde);
  // Numerov with a = 1 - (h^2/12) V: a_{i+1} f_{i+1} - (12 - 10 a_i) f_i + a_{i-1} f_{i-1} = 0.
  for (std::size_t i = n - 2; i >= 1; --i) {
    f[i - 1] = ((12.0 - 10.0 * a[i]) * f[i] - a[i + 1] * f[i + 1]) / a[i - 1];
  }
  sol.derivative = differentiate_uniform(f, h);
  sol.derivative[n - 1] = c * airy_ai_prime(x[n - 1] - r_tilde);

  std::vector<double> qf(n);
  for (std::size_t i = 0; i < n; ++i) qf[i] = q[i] * f[i];
  sol.overlap = cumulative_from_right(qf, h);
  const double tail = c * airy_product_tail(x[n - 1], r_tilde);
  for (double& v : sol.overlap) v += tail;
  return sol;
}

FTildeSolution::Point FTildeSolution::at(const EdgeTable& table, double xv) const {
  const auto [k, t] = table.locate(xv);
  const std::size_t j = k + 1;
  const auto& x = table.x();
  const auto& q = table.q();
  auto fpp = [&](std::size_t i) { return (x[i] + 2.0 * q[i] * q[i] - r_tilde) * values[i]; };
  const double h = table.step();
  Point p;
  p.f = hermite(values[k], derivative[k], values[j], derivative[j], h, t);
  p.f_prime = hermite(derivative[k], fpp(k), derivative[j], fpp(j), h, t);
  p.overlap = hermite(overlap[k], -q[k] * values[k], overlap[j], -q[j] * values[j], h, t);
  return p;
}

double FTildeSolution::max_relative_residual(const EdgeTable& table) const {
  const auto& x = table.x();
  const auto& q = table.q();
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < values.size(); ++i) {
    const double lhs = second_derivative_at(values, table.step(), i);
    const double rhs = (x[i] + 2.0 * q[i] * q[i] - r_tilde) * values[i];
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(values[i])));
  }
  return worst;
}

std::vector<double> g_tilde(double r_tilde, const EdgeTable& table, const FTildeSolution& f) {
  const auto& q = table.q();
  std::vector<double> g(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) g[i] = -r_tilde * f.overlap[i] / q[i];
  return g;
}

double edge_bracket_integral(double s, const EdgeTable& table) {
  const FTildeSolution sol = solve_f_tilde(s, table);
  const auto& F2 = table.F2();
  std::vector<double> integrand(table.size());
  for (std::size_t i = 0; i < integrand.size(); ++i) {
    const double f = sol.values[i], J = sol.overlap[i];
    integrand[i] = (f * f - J * J) * F2[i];
  }
  // Past x_max: F2 = 1, J^2 negligible, f = c Ai(x - s).
  const double c = f_tilde_normalization();
  const AiryValues edge = airy(table.x_max() - s);
  const double tail =
      c * c * (edge.ai_prime * edge.ai_prime - (table.x_max() - s) * edge.ai * edge.ai);
  return prefactor() * (integrate_uniform(integrand, table.step()) + tail);
}

double rho_edge_exact(double r_tilde, const EdgeTable& table) {
  if (r_tilde < 0.0) throw std::domain_error("rho_edge_exact: r_tilde must be >= 0");
  return std::max(0.0, edge_bracket_integral(r_tilde, table));
}

double p_typ_exact(double r_tilde, const EdgeTable& table) {
  if (r_tilde < 0.0) throw std::domain_error("p_typ_exact: r_tilde must be >= 0");
  return std::max(0.0, edge_bracket_integral(-r_tilde, table));
}

double rho_edge_conditional(double r_tilde, double x, const EdgeTable& table) {
  if (r_tilde < 0.0) throw std::domain_error("rho_edge_conditional: r_tilde must be >= 0");
  const EdgePoint e = table.at(x);
  const FTildeSolution sol = solve_f_tilde(r_tilde, table);
  const auto p = sol.at(table, x);
  const double b = local_bracket(r_tilde, e.q, e.q_prime, e.R, p.f, p.overlap);
  return std::max(0.0, prefactor() * b / e.R);
}

double p_typ_conditional(double r_tilde, double x, const EdgeTable& table) {
  if (r_tilde < 0.0) throw std::domain_error("p_typ_conditional: r_tilde must be >= 0");
  const double y = x - r_tilde;
  const EdgePoint top = table.at(x);
  const EdgePoint e = table.at(y);
  const FTildeSolution sol = solve_f_tilde(-r_tilde, table);
  const auto p = sol.at(table, y);
  const double b = local_bracket(-r_tilde, e.q, e.q_prime, e.R, p.f, p.overlap);
  const double ratio = std::exp(table.log_F2(y) - table.log_F2(x));
  return std::max(0.0, prefactor() * b * ratio / top.R);
}

}  // namespace softedge
