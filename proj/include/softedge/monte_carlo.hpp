#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "softedge/estimators.hpp"
#include "softedge/sampler.hpp"

namespace softedge {

/// One histogram to fill during a run.
struct Probe {
  Observable observable;
  double lo;
  double hi;
  std::size_t bins;
};

enum class SolverPath {
  counting,  // Sturm bisection for the top eigenvalues, Sturm counts at bin edges
  full,      // full QL spectrum per sample
};

struct SimulationConfig {
  EnsembleSpec ensemble;
  std::uint64_t samples = 200000;
  /// Index of the first sample; shards of one run use disjoint index ranges.
  std::uint64_t first_sample = 0;
  std::vector<Probe> probes;
  std::optional<ConditionWindow> window;
  unsigned workers = 1;
  SolverPath solver = SolverPath::counting;
  /// Keep every binned value (per probe, in sample order) for distribution tests.
  bool keep_values = false;

  /// Throws std::invalid_argument on an unusable configuration.
  void validate() const;
};

struct SimulationResult {
  std::vector<Histogram> histograms;  // one per probe, in probe order
  std::uint64_t accepted = 0;         // samples passing the window (all samples without one)
  std::vector<std::vector<double>> values;
};

/**
 * Samples `samples` matrices (sample i uses the stream keyed by (seed, first_sample + i)),
 * keeps those whose lambda_max lies in the window, and fills every probe.
 * Work is split into contiguous index ranges across `workers` threads and merged in
 * order, so the result is bit-identical for any worker count.
 */
SimulationResult run_simulation(const SimulationConfig& config);

/// Default binning: edge observables cover r~ in [0, 6] (200 bins), bulk distances
/// [0, 2 sqrt(2N)], positions the spectrum plus a margin.
Probe default_probe(Observable observable, Rescaling rescaling, std::size_t n);

}  // namespace softedge
