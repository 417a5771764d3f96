#include "softedge/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "softedge/eigensolver.hpp"
#include "softedge/random.hpp"

namespace softedge {

void SimulationConfig::validate() const {
  ensemble.validate();
  if (samples == 0) throw std::invalid_argument("simulation: samples must be positive");
  if (workers == 0) throw std::invalid_argument("simulation: workers must be positive");
  if (probes.empty()) throw std::invalid_argument("simulation: no observable requested");
  for (const Probe& p : probes) {
    Histogram check(p.observable, p.lo, p.hi, p.bins);
    if ((p.observable == Observable::dos || p.observable == Observable::gap) &&
        ensemble.n < 2) {
      throw std::invalid_argument("simulation: " + to_string(p.observable) + " needs n >= 2");
    }
  }
  if (window) {
    window->validate();
    for (const Probe& p : probes) {
      if (!is_edge_compatible(p.observable)) {
        throw std::invalid_argument("simulation: a window applies only to dos and gap, not " +
                                    to_string(p.observable));
      }
    }
  }
}

namespace {

struct Shard {
  std::vector<Histogram> histograms;
  std::vector<std::vector<double>> values;
  std::uint64_t accepted = 0;
};

// Per-thread scratch for the counting path.
struct Workspace {
  TridiagonalMatrix matrix;
  std::vector<double> shifts, scratch, eigen, eigen_scratch;
  std::vector<std::size_t> counts;
};

// Distances: bin b holds lambda_max - lambda in [edge_b, edge_{b+1}), i.e. eigenvalues in
// (top - edge_{b+1}, top - edge_b]. Counts below are #{lambda < shift}.
void count_distances(const TridiagonalMatrix& m, double top, Histogram& h, Workspace& w) {
  const std::size_t bins = h.bins();
  const std::size_t n = m.size();
  w.shifts.resize(bins + 1);
  w.counts.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) w.shifts[b] = top - h.bin_left(b);
  sturm_counts(m, w.shifts, w.counts, w.scratch);
  // The maximum itself is excluded: below top - edge_0 there are n - 1 eigenvalues
  // when the histogram starts at 0.
  std::size_t above = h.lo() <= 0.0 ? n - 1 : w.counts[0];
  std::uint64_t binned = 0;
  for (std::size_t b = 0; b < bins; ++b) {
    const std::size_t below = std::min(above, w.counts[b + 1]);
    h.add_to_bin(b, above - below);
    binned += above - below;
    above = below;
  }
  h.add_out_of_range(n - 1 - binned);
  h.add_sample();
}

void count_positions(const TridiagonalMatrix& m, Histogram& h, Workspace& w) {
  const std::size_t bins = h.bins();
  const std::size_t n = m.size();
  w.shifts.resize(bins + 1);
  w.counts.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) w.shifts[b] = h.bin_left(b);
  sturm_counts(m, w.shifts, w.counts, w.scratch);
  std::uint64_t binned = 0;
  for (std::size_t b = 0; b < bins; ++b) {
    const std::size_t c = w.counts[b + 1] - w.counts[b];
    h.add_to_bin(b, c);
    binned += c;
  }
  h.add_out_of_range(n - binned);
  h.add_sample();
}

void record(std::vector<double>& out, const Spectrum& s, Observable o) {
  switch (o) {
    case Observable::dos:
      for (std::size_t i = 1; i < s.size(); ++i) out.push_back(s.lambda_max() - s[i]);
      break;
    case Observable::gap: out.push_back(s.gap()); break;
    case Observable::density: out.insert(out.end(), s.values().begin(), s.values().end()); break;
    case Observable::lambda_max: out.push_back(s.lambda_max()); break;
  }
}

Shard run_shard(const SimulationConfig& cfg, std::uint64_t begin, std::uint64_t end) {
  Shard shard;
  for (const Probe& p : cfg.probes) shard.histograms.emplace_back(p.observable, p.lo, p.hi, p.bins);
  shard.values.resize(cfg.probes.size());

  bool need_gap = false, need_top = false;
  for (const Probe& p : cfg.probes) {
    need_gap |= p.observable == Observable::gap;
    need_top |= p.observable == Observable::dos || p.observable == Observable::lambda_max;
  }
  const bool full = cfg.solver == SolverPath::full || cfg.keep_values;
  const std::size_t n = cfg.ensemble.n;

  Workspace w;
  for (std::uint64_t i = begin; i < end; ++i) {
    SampleStream rng(cfg.ensemble.seed, cfg.first_sample + i);
    sample_matrix_into(cfg.ensemble, rng, w.matrix);
    const TridiagonalMatrix& m = w.matrix;

    if (full) {
      eigenvalues_into(m, w.eigen, w.eigen_scratch);
      const Spectrum s(w.eigen);
      if (cfg.window && !condition_accept(s, *cfg.window)) continue;
      ++shard.accepted;
      for (std::size_t k = 0; k < cfg.probes.size(); ++k) {
        accumulate(s, shard.histograms[k]);
        if (cfg.keep_values) record(shard.values[k], s, cfg.probes[k].observable);
      }
      continue;
    }

    if (cfg.window) {
      // lambda_max in (c - e, c + e)  <=>  some eigenvalue >= c - e and none >= c + e.
      const double lo = cfg.window->center - cfg.window->half_width;
      const double hi = cfg.window->center + cfg.window->half_width;
      if (sturm_count(m, lo) >= n || sturm_count(m, hi) < n) continue;
    }
    double top = 0.0, second = 0.0;
    if (need_gap) {
      std::tie(top, second) = top_two(m);
    } else if (need_top) {
      top = largest_eigenvalue(m);
    }
    if (cfg.window && !cfg.window->contains(top)) continue;
    ++shard.accepted;
    for (std::size_t k = 0; k < cfg.probes.size(); ++k) {
      Histogram& h = shard.histograms[k];
      switch (h.kind()) {
        case Observable::dos: count_distances(m, top, h, w); break;
        case Observable::gap: h.add(top - second); h.add_sample(); break;
        case Observable::lambda_max: h.add(top); h.add_sample(); break;
        case Observable::density: count_positions(m, h, w); break;
      }
    }
  }
  return shard;
}

}  // namespace

SimulationResult run_simulation(const SimulationConfig& cfg) {
  cfg.validate();
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(cfg.workers, cfg.samples));
  std::vector<Shard> shards(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto bound = [&](unsigned k) { return cfg.samples * k / workers; };
  auto work = [&](unsigned k) {
    try {
      shards[k] = run_shard(cfg, bound(k), bound(k + 1));
    } catch (...) {
      errors[k] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < workers; ++k) pool.emplace_back(work, k);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  SimulationResult result;
  result.histograms = std::move(shards[0].histograms);
  result.values = std::move(shards[0].values);
  result.accepted = shards[0].accepted;
  for (unsigned k = 1; k < workers; ++k) {
    for (std::size_t p = 0; p < result.histograms.size(); ++p) {
      result.histograms[p] = merge(result.histograms[p], shards[k].histograms[p]);
      auto& v = result.values[p];
      v.insert(v.end(), shards[k].values[p].begin(), shards[k].values[p].end());
    }
    result.accepted += shards[k].accepted;
  }
  return result;
}

Probe default_probe(Observable observable, Rescaling rescaling, std::size_t n) {
  const double nn = static_cast<double>(n);
  const double edge = std::sqrt(2.0 * nn);
  const double s = edge_scale(n);
  switch (observable) {
    case Observable::dos:
    case Observable::gap:
      if (rescaling == Rescaling::edge) return {observable, 0.0, 6.0 / s, 200};
      return {observable, 0.0, 2.0 * edge, 200};
    case Observable::lambda_max:
      return {observable, edge - 8.0 / s, edge + 5.0 / s, 200};
    case Observable::density:
      if (rescaling == Rescaling::edge) return {observable, edge - 8.0 / s, edge + 5.0 / s, 200};
      return {observable, -edge - 8.0 / s, edge + 8.0 / s, 200};
  }
  throw std::invalid_argument("default_probe: unknown observable");
}

}  // namespace softedge
