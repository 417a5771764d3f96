#include "softedge/edge_table.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "softedge/airy.hpp"
#include "softedge/grid_calculus.hpp"

namespace softedge {

namespace {

// Hastings-McLeod left asymptotics, two terms.
double left_boundary_value(double x) {
  return std::sqrt(-0.5 * x) * (1.0 + 1.0 / (8.0 * x * x * x));
}

// Solves a tridiagonal system in place (Thomas algorithm); rhs becomes the solution.
void solve_tridiagonal(std::vector<double>& sub, std::vector<double>& diag,
                       std::vector<double>& super, std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * super[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - super[i] * rhs[i + 1]) / diag[i];
}

// Numerov residual of q'' = 2q^3 + xq at interior nodes; returns max |G| / h^2.
double numerov_residual(const std::vector<double>& x, const std::vector<double>& q, double h,
                        std::vector<double>& out) {
  const std::size_t n = q.size();
  const double k = h * h / 12.0;
  auto force = [&](std::size_t i) { return 2.0 * q[i] * q[i] * q[i] + x[i] * q[i]; };
  double worst = 0.0;
  out.assign(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    out[i] = q[i + 1] - 2.0 * q[i] + q[i - 1] - k * (force(i + 1) + 10.0 * force(i) + force(i - 1));
    worst = std::max(worst, std::abs(out[i]));
  }
  return worst / (h * h);
}

void validate(const EdgeTableOptions& o) {
  if (!(o.x_min <= -10.0)) throw std::invalid_argument("edge table: x_min must be <= -10");
  if (!(o.x_max >= 8.0)) throw std::invalid_argument("edge table: x_max must be >= 8");
  if (!(o.step > 0.0) || o.step > 1.0 / 256.0) {
    throw std::invalid_argument("edge table: step must lie in (0, 1/256]");
  }
}

}  // namespace

EdgeTable build_edge_table(const EdgeTableOptions& options) {
  validate(options);
  const auto intervals =
      static_cast<std::size_t>(std::llround((options.x_max - options.x_min) / options.step));
  const std::size_t n = intervals + 1;
  const double h = (options.x_max - options.x_min) / static_cast<double>(intervals);

  EdgeTable table;
  table.step_ = h;
  table.x_.resize(n);
  for (std::size_t i = 0; i < n; ++i) table.x_[i] = options.x_min + h * static_cast<double>(i);
  table.x_.back() = options.x_max;
  const auto& x = table.x_;

  std::vector<double> q(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ai = airy_ai(x[i]);
    q[i] = std::sqrt(std::max(0.0, -0.5 * x[i]) + ai * ai);
  }
  q.front() = left_boundary_value(options.x_min);
  q.back() = airy_ai(options.x_max);

  const double k = h * h / 12.0;
  std::vector<double> residual, sub(n - 2), diag(n - 2), super(n - 2), rhs(n - 2);
  double norm = numerov_residual(x, q, h, residual);
  int iteration = 0;
  for (;; ++iteration) {
    if (iteration >= options.max_newton_iterations) {
      std::ostringstream msg;
      msg << "Hastings-McLeod Newton iteration did not converge after " << iteration
          << " steps (residual norm " << norm << ")";
      throw ConvergenceError(msg.str(), norm);
    }
    auto dforce = [&](std::size_t i) { return 6.0 * q[i] * q[i] + x[i]; };
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const std::size_t r = i - 1;
      sub[r] = 1.0 - k * dforce(i - 1);
      diag[r] = -2.0 - 10.0 * k * dforce(i);
      super[r] = 1.0 - k * dforce(i + 1);
      rhs[r] = -residual[i];
    }
    solve_tridiagonal(sub, diag, super, rhs);

    double damping = 1.0;
    std::vector<double> trial(q);
    double trial_norm = norm;
    for (int halvings = 0; halvings < 30; ++halvings) {
      for (std::size_t i = 1; i + 1 < n; ++i) trial[i] = q[i] + damping * rhs[i - 1];
      trial_norm = numerov_residual(x, trial, h, residual);
      if (trial_norm < norm || trial_norm < 1e-10) break;
      damping *= 0.5;
    }
    double max_step = 0.0;
    for (double d : rhs) max_step = std::max(max_step, std::abs(damping * d));
    q.swap(trial);
    norm = trial_norm;
    if (max_step < options.newton_tolerance) break;
  }
  table.newton_iterations_ = iteration + 1;

  const double xm = options.x_max;
  const AiryValues edge = airy(xm);

  std::vector<double> q2(n);
  for (std::size_t i = 0; i < n; ++i) q2[i] = q[i] * q[i];

  table.q_prime_ = differentiate_uniform(q, h);

  // Tails past x_max use q = Ai there: int Ai^2 = x Ai^2 - Ai'^2, int x Ai^2 below.
  const double tail_R = edge.ai_prime * edge.ai_prime - xm * edge.ai * edge.ai;
  table.R_ = cumulative_from_right(q2, h);
  for (double& v : table.R_) v += tail_R;

  table.I_ = cumulative_from_right(q, h);
  const double tail_I = airy_integral(xm);
  for (double& v : table.I_) v += tail_I;

  const double moment_tail = -(xm * xm * edge.ai * edge.ai - xm * edge.ai_prime * edge.ai_prime +
                               edge.ai * edge.ai_prime) / 3.0;
  const double tail_S = moment_tail - xm * tail_R;
  table.minus_log_F2_ = cumulative_from_right(table.R_, h);
  for (double& v : table.minus_log_F2_) v += tail_S;
  table.F2_.resize(n);
  for (std::size_t i = 0; i < n; ++i) table.F2_[i] = std::exp(-table.minus_log_F2_[i]);

  table.q_ = std::move(q);
  return table;
}

std::pair<std::size_t, double> EdgeTable::locate(double x) const {
  if (!contains(x)) {
    std::ostringstream msg;
    msg << "edge table: x = " << x << " outside [" << x_min() << ", " << x_max() << "]";
    throw std::out_of_range(msg.str());
  }
  const double pos = (x - x_min()) / step_;
  auto k = static_cast<std::size_t>(pos);
  if (k + 1 >= size()) k = size() - 2;
  return {k, std::clamp(pos - static_cast<double>(k), 0.0, 1.0)};
}

EdgePoint EdgeTable::at(double xv) const {
  const auto [k, t] = locate(xv);
  const std::size_t j = k + 1;
  const double h = step_;
  auto qpp = [&](std::size_t i) { return 2.0 * q_[i] * q_[i] * q_[i] + x_[i] * q_[i]; };
  EdgePoint p;
  p.q = hermite(q_[k], q_prime_[k], q_[j], q_prime_[j], h, t);
  p.q_prime = hermite(q_prime_[k], qpp(k), q_prime_[j], qpp(j), h, t);
  p.R = hermite(R_[k], -q_[k] * q_[k], R_[j], -q_[j] * q_[j], h, t);
  p.I = hermite(I_[k], -q_[k], I_[j], -q_[j], h, t);
  p.F2 = std::exp(log_F2(xv));
  return p;
}

double EdgeTable::log_F2(double xv) const {
  const auto [k, t] = locate(xv);
  const std::size_t j = k + 1;
  return -hermite(minus_log_F2_[k], -R_[k], minus_log_F2_[j], -R_[j], step_, t);
}

double EdgeTable::max_ode_residual() const {
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < size(); ++i) {
    const double lhs = second_derivative_at(q_, step_, i);
    worst = std::max(worst, std::abs(lhs - 2.0 * q_[i] * q_[i] * q_[i] - x_[i] * q_[i]));
  }
  return worst;
}

std::vector<double> EdgeTable::tw_density() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = R_[i] * F2_[i];
  return out;
}

TracyWidomMoments tracy_widom_moments(const EdgeTable& table) {
  const auto density = table.tw_density();
  const auto& x = table.x();
  std::vector<double> m1(density.size()), m2(density.size());
  for (std::size_t i = 0; i < density.size(); ++i) {
    m1[i] = x[i] * density[i];
    m2[i] = x[i] * x[i] * density[i];
  }
  const double h = table.step();
  TracyWidomMoments m;
  m.mass = integrate_uniform(density, h);
  m.mean = integrate_uniform(m1, h);
  m.variance = integrate_uniform(m2, h) - m.mean * m.mean;
  return m;
}

}  // namespace softedge
