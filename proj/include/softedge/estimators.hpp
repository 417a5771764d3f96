#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "softedge/eigensolver.hpp"

namespace softedge {

enum class Observable { dos, gap, density, lambda_max };
enum class Rescaling { none, bulk, edge };

std::string to_string(Observable o);
std::string to_string(Rescaling r);
/// Throw std::invalid_argument on unknown names.
Observable parse_observable(std::string_view name);
Rescaling parse_rescaling(std::string_view name);

/// Observables that are distances from lambda_max and may be conditioned on it.
bool is_edge_compatible(Observable o);

/**
 * Uniform-bin histogram over [lo, hi). Values outside go to out_of_range.
 * density(b) = counts[b] / (n_events * width): every observable is normalized by its
 * number of binned increments ((N-1) per sample for dos, 1 for gap and lambda_max,
 * N for density).
 */
class Histogram {
 public:
  Histogram(Observable kind, double lo, double hi, std::size_t bins);

  Observable kind() const noexcept { return kind_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  std::size_t bins() const noexcept { return counts_.size(); }
  double bin_width() const noexcept { return (hi_ - lo_) / static_cast<double>(bins()); }
  double bin_left(std::size_t b) const noexcept;
  double bin_right(std::size_t b) const noexcept;
  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
  std::uint64_t n_events() const noexcept { return n_events_; }
  std::uint64_t n_samples() const noexcept { return n_samples_; }
  std::uint64_t out_of_range() const noexcept { return out_of_range_; }

  void add(double value);
  /// Bulk increments used by the counting fast path.
  void add_to_bin(std::size_t b, std::uint64_t count);
  void add_out_of_range(std::uint64_t count);
  void add_sample() noexcept { ++n_samples_; }

  double density(std::size_t b) const;
  double stderr_at(std::size_t b) const;

  bool same_layout(const Histogram& other) const noexcept;
  bool operator==(const Histogram& other) const = default;

 private:
  Observable kind_;
  double lo_, hi_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t n_events_ = 0;
  std::uint64_t n_samples_ = 0;
  std::uint64_t out_of_range_ = 0;
};

/// Component-wise sum; throws std::invalid_argument unless the layouts match.
Histogram merge(const Histogram& a, const Histogram& b);

/// (x, y, stderr) triples with x strictly increasing.
struct Curve {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> stderr;

  std::size_t size() const noexcept { return x.size(); }
  /// Throws std::invalid_argument unless lengths agree and x is strictly increasing.
  void validate() const;
  /// Linear interpolation; throws std::out_of_range outside [x.front(), x.back()].
  double interpolate(double at) const;
};

/// Histogram rows after an optional change of variables: the CSV form of a simulation.
struct BinnedCurve {
  std::vector<double> bin_left;
  std::vector<double> bin_right;
  std::vector<double> density;
  std::vector<double> stderr;
  std::vector<std::uint64_t> counts;

  std::size_t size() const noexcept { return density.size(); }
  /// Bin midpoints as abscissae.
  Curve curve() const;
};

/// |lambda_max - center| < half_width (strict).
struct ConditionWindow {
  double center;
  double half_width;

  /// Window centered on the soft edge sqrt(2N).
  static ConditionWindow at_edge(std::size_t n, double half_width);
  /// Throws std::invalid_argument unless half_width > 0 and both fields are finite.
  void validate() const;
  bool contains(double lambda_max) const noexcept;
};

/// Bins lambda_max - lambda_i for every non-maximal eigenvalue. Throws std::domain_error if n < 2.
void accumulate_dos(const Spectrum& s, Histogram& h);
/// Bins the first gap. Throws std::domain_error if n < 2.
void accumulate_gap(const Spectrum& s, Histogram& h);
/// Bins every eigenvalue.
void accumulate_global_density(const Spectrum& s, Histogram& h);
/// Bins lambda_max.
void accumulate_lambda_max(const Spectrum& s, Histogram& h);
/// Dispatches on h.kind().
void accumulate(const Spectrum& s, Histogram& h);

bool condition_accept(const Spectrum& s, const ConditionWindow& w);

/// Normalized histogram in the requested coordinates. Edge coordinates are
/// r~ = sqrt(2) N^{1/6} r for distances and sqrt(2) N^{1/6} (lambda - sqrt(2N)) for positions.
BinnedCurve rescale(const Histogram& h, std::size_t n, Rescaling rescaling);
/// x = r / sqrt(N), y = sqrt(N) density.
Curve rescale_bulk(const Histogram& h, std::size_t n);
/// x = sqrt(2) N^{1/6} r; y = density / (sqrt(2) N^{-5/6}) for dos and density,
/// density / (sqrt(2) N^{1/6}) for gap and lambda_max.
Curve rescale_edge(const Histogram& h, std::size_t n);

/// Edge length scale sqrt(2) N^{1/6} (multiplies a distance r to give r~).
double edge_scale(std::size_t n);

struct CompareRange {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
};

struct CurveMetrics {
  double sup = 0.0;
  double l2 = 0.0;            // sqrt(sum d_i^2 dx_i)
  double chi2_per_bin = 0.0;  // over points with positive combined stderr
  std::size_t points = 0;     // points compared
  std::size_t chi2_points = 0;
};

/**
 * Compares c against ref at the abscissae of c that lie in the overlap of both ranges
 * and inside `range`. Reference stderr (if any) is combined in quadrature.
 * Throws std::invalid_argument if no point qualifies.
 */
CurveMetrics compare_curves(const Curve& c, const Curve& ref, CompareRange range = {});
CurveMetrics compare_curves(const Curve& c, const std::function<double(double)>& ref,
                            CompareRange range = {});

/// sup_x |F_emp(x) - cdf(x)| over the sample. Throws std::invalid_argument when empty.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

struct LineFit {
  double slope;
  double intercept;
  double slope_stderr;
  std::size_t points;
};

/// Weighted least squares y = intercept + slope x. Throws std::invalid_argument with < 2 points.
LineFit weighted_line_fit(const std::vector<double>& x, const std::vector<double>& y,
                          const std::vector<double>& w);

/**
 * Power law y ~ a x^p fitted on log y versus log x over [lo, hi], weights (y/stderr)^2,
 * using only points whose implied count (y/stderr)^2 is at least min_counts.
 * Returns slope = p, intercept = ln a.
 */
LineFit fit_power_law(const Curve& c, double lo, double hi, double min_counts = 100.0);

}  // namespace softedge
