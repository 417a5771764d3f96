#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "softedge/random.hpp"

namespace softedge {

/// Gaussian beta-ensemble of n x n matrices with weight exp(-beta/2 sum lambda^2).
struct EnsembleSpec {
  double beta = 2.0;
  std::size_t n = 100;
  std::uint64_t seed = 42;

  /// Throws std::invalid_argument on beta <= 0 or n == 0.
  void validate() const;
};

/// Symmetric tridiagonal matrix: diag d_1..d_n, offdiag e_1..e_{n-1} >= 0.
struct TridiagonalMatrix {
  std::vector<double> diag;
  std::vector<double> offdiag;

  TridiagonalMatrix() = default;
  TridiagonalMatrix(std::vector<double> d, std::vector<double> e);

  std::size_t size() const noexcept { return diag.size(); }

  /// Gershgorin radius max_i(|d_i| + |e_{i-1}| + |e_i|); bounds every eigenvalue.
  double gershgorin_radius() const noexcept;

  /// Throws std::invalid_argument if the shape is inconsistent or entries are not finite.
  void validate() const;
};

/**
 * Draws one member of the ensemble through the scaled Dumitriu-Edelman model:
 * d_i ~ N(0, 1/beta), e_j ~ chi_{beta(n-j)} / sqrt(2 beta). The eigenvalue law is
 * exactly P(lambda) ~ prod|lambda_i - lambda_j|^beta exp(-beta/2 sum lambda_i^2).
 */
TridiagonalMatrix sample_matrix(const EnsembleSpec& spec, SampleStream& rng);

/// Draws sample `index` of the run described by `spec` (stream keyed by (seed, index)).
TridiagonalMatrix sample_matrix(const EnsembleSpec& spec, std::uint64_t index);

/// In-place variant for hot loops; `out` is resized as needed. Does not re-validate spec.
void sample_matrix_into(const EnsembleSpec& spec, SampleStream& rng, TridiagonalMatrix& out);

/// ln Z_N for the joint eigenvalue density, evaluated through lgamma.
double log_partition_function(std::size_t n, double beta);

/**
 * Log of the normalized joint eigenvalue density (unordered eigenvalues):
 * beta sum_{i<j} ln|l_i - l_j| - beta/2 sum l_i^2 - ln Z_N.
 * Coincident eigenvalues give -infinity.
 */
double log_joint_density(std::span<const double> lambdas, double beta);

}  // namespace softedge
