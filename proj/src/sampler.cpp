#include "softedge/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace softedge {

void EnsembleSpec::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("ensemble: beta must be positive, got " + std::to_string(beta));
  }
  if (n == 0) throw std::invalid_argument("ensemble: matrix size must be at least 1");
}

TridiagonalMatrix::TridiagonalMatrix(std::vector<double> d, std::vector<double> e)
    : diag(std::move(d)), offdiag(std::move(e)) {
  validate();
}

double TridiagonalMatrix::gershgorin_radius() const noexcept {
  double radius = 0.0;
  const std::size_t n = diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(diag[i]);
    if (i > 0) row += std::abs(offdiag[i - 1]);
    if (i + 1 < n) row += std::abs(offdiag[i]);
    radius = std::max(radius, row);
  }
  return radius;
}

void TridiagonalMatrix::validate() const {
  if (diag.empty()) throw std::invalid_argument("tridiagonal: empty matrix");
  if (offdiag.size() + 1 != diag.size()) {
    throw std::invalid_argument("tridiagonal: offdiag must have size(diag) - 1 entries");
  }
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(diag.begin(), diag.end(), finite) ||
      !std::all_of(offdiag.begin(), offdiag.end(), finite)) {
    throw std::invalid_argument("tridiagonal: non-finite entry");
  }
  if (std::any_of(offdiag.begin(), offdiag.end(), [](double v) { return v < 0.0; })) {
    throw std::invalid_argument("tridiagonal: negative off-diagonal entry");
  }
}

void sample_matrix_into(const EnsembleSpec& spec, SampleStream& rng, TridiagonalMatrix& out) {
  const std::size_t n = spec.n;
  out.diag.resize(n);
  out.offdiag.resize(n - 1);
  const double diag_sd = 1.0 / std::sqrt(spec.beta);
  const double off_scale = 1.0 / std::sqrt(2.0 * spec.beta);
  for (std::size_t i = 0; i < n; ++i) out.diag[i] = diag_sd * rng.gaussian();
  for (std::size_t j = 1; j < n; ++j) {
    const double dof = spec.beta * static_cast<double>(n - j);
    out.offdiag[j - 1] = off_scale * sample_chi(dof, rng);
  }
}

TridiagonalMatrix sample_matrix(const EnsembleSpec& spec, SampleStream& rng) {
  spec.validate();
  TridiagonalMatrix m;
  sample_matrix_into(spec, rng, m);
  return m;
}

TridiagonalMatrix sample_matrix(const EnsembleSpec& spec, std::uint64_t index) {
  SampleStream rng(spec.seed, index);
  return sample_matrix(spec, rng);
}

double log_partition_function(std::size_t n, double beta) {
  if (n == 0 || !(beta > 0.0)) {
    throw std::invalid_argument("log_partition_function: need n >= 1 and beta > 0");
  }
  const double nn = static_cast<double>(n);
  double log_z = 0.5 * nn * std::log(2.0 * std::numbers::pi) -
                 (0.5 * nn + 0.25 * beta * nn * (nn - 1.0)) * std::log(beta) -
                 nn * std::lgamma(1.0 + 0.5 * beta);
  for (std::size_t j = 1; j <= n; ++j) {
    log_z += std::lgamma(1.0 + 0.5 * beta * static_cast<double>(j));
  }
  return log_z;
}

double log_joint_density(std::span<const double> lambdas, double beta) {
  if (lambdas.empty()) throw std::invalid_argument("log_joint_density: empty spectrum");
  double vandermonde = 0.0;
  double square_sum = 0.0;
  const std::size_t n = lambdas.size();
  for (std::size_t i = 0; i < n; ++i) {
    square_sum += lambdas[i] * lambdas[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const double diff = std::abs(lambdas[i] - lambdas[j]);
      if (diff == 0.0) return -std::numeric_limits<double>::infinity();
      vandermonde += std::log(diff);
    }
  }
  return beta * vandermonde - 0.5 * beta * square_sum - log_partition_function(n, beta);
}

}  // namespace softedge
