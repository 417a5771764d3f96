#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "softedge/sampler.hpp"

namespace softedge {

/// Eigenvalues of one sample, sorted descending: values()[0] is lambda_max.
class Spectrum {
 public:
  Spectrum() = default;
  /// Sorts `values` descending (stable).
  explicit Spectrum(std::vector<double> values);

  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  double lambda_max() const;
  /// First gap Lambda_1 - Lambda_2; throws std::domain_error when size() < 2.
  double gap() const;

 private:
  std::vector<double> values_;
};

/// All eigenvalues by implicit-shift QL. Throws std::invalid_argument on malformed input.
Spectrum eigenvalues_full(const TridiagonalMatrix& m);

/// Hot-loop variant: overwrites `work` with the eigenvalues sorted descending.
void eigenvalues_into(const TridiagonalMatrix& m, std::vector<double>& work,
                      std::vector<double>& scratch);

/// Number of eigenvalues strictly below x (Sturm sequence sign count).
std::size_t sturm_count(const TridiagonalMatrix& m, double x);

/// sturm_count at many abscissae in one sweep over the matrix; `scratch` is reused storage.
/// Shifts must be finite.
void sturm_counts(const TridiagonalMatrix& m, std::span<const double> shifts,
                  std::span<std::size_t> out, std::vector<double>& scratch);

/// Largest eigenvalue by Sturm bisection to absolute tolerance 1e-12 * ||m||.
double largest_eigenvalue(const TridiagonalMatrix& m);

/// (Lambda_1, Lambda_2) by Sturm bisection; throws std::domain_error when n < 2.
std::pair<double, double> top_two(const TridiagonalMatrix& m);

}  // namespace softedge
