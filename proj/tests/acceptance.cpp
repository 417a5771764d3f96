// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance            run every criterion
//   acceptance <id>...    run the named criteria; exit status 1 if any fails
// Monte Carlo runs shared between criteria are cached under $SOFTEDGE_ACCEPTANCE_CACHE
// (default ./acceptance_cache).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <unistd.h>

#include "json.hpp"
#include "softedge/airy.hpp"
#include "softedge/asymptotics.hpp"
#include "softedge/densities.hpp"
#include "softedge/edge_table.hpp"
#include "softedge/grid_calculus.hpp"
#include "softedge/monte_carlo.hpp"
#include "softedge/oracle.hpp"
#include "softedge/scaling_functions.hpp"

using namespace softedge;

namespace {

constexpr std::uint64_t kSeed = 1;
constexpr std::uint64_t kSamples = 200000;
constexpr std::size_t kN = 100;

struct Verdict {
  bool pass;
  std::string detail;
};

std::ostringstream fmt() {
  std::ostringstream os;
  os << std::setprecision(4);
  return os;
}

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

const EdgeTable& table() {
  static const EdgeTable t = build_edge_table();
  return t;
}

// ---- cached simulations ---------------------------------------------------------------

std::filesystem::path cache_dir() {
  const char* env = std::getenv("SOFTEDGE_ACCEPTANCE_CACHE");
  return env && *env ? std::filesystem::path(env) : std::filesystem::path("acceptance_cache");
}

std::string cache_key(const SimulationConfig& cfg) {
  std::ostringstream key;
  key << std::setprecision(17) << "v" << SOFTEDGE_VERSION << "_b" << cfg.ensemble.beta << "_n"
      << cfg.ensemble.n << "_seed" << cfg.ensemble.seed << "_s" << cfg.samples;
  if (cfg.window) key << "_w" << cfg.window->center << "_" << cfg.window->half_width;
  for (const Probe& p : cfg.probes) {
    key << "_" << to_string(p.observable) << "_" << p.lo << "_" << p.hi << "_" << p.bins;
  }
  return std::to_string(std::hash<std::string>{}(key.str())) + ".json";
}

nlohmann::json to_json(const SimulationResult& r) {
  nlohmann::json j;
  j["accepted"] = r.accepted;
  for (const Histogram& h : r.histograms) {
    j["histograms"].push_back({{"counts", h.counts()},
                               {"out_of_range", h.out_of_range()},
                               {"samples", h.n_samples()}});
  }
  return j;
}

SimulationResult from_json(const nlohmann::json& j, const SimulationConfig& cfg) {
  SimulationResult r;
  r.accepted = j.at("accepted").get<std::uint64_t>();
  const auto& hs = j.at("histograms");
  if (hs.size() != cfg.probes.size()) throw std::runtime_error("cache: probe count mismatch");
  for (std::size_t k = 0; k < hs.size(); ++k) {
    const Probe& p = cfg.probes[k];
    Histogram h(p.observable, p.lo, p.hi, p.bins);
    const auto counts = hs[k].at("counts").get<std::vector<std::uint64_t>>();
    if (counts.size() != p.bins) throw std::runtime_error("cache: bin count mismatch");
    for (std::size_t b = 0; b < counts.size(); ++b) h.add_to_bin(b, counts[b]);
    h.add_out_of_range(hs[k].at("out_of_range").get<std::uint64_t>());
    for (std::uint64_t s = hs[k].at("samples").get<std::uint64_t>(); s > 0; --s) h.add_sample();
    r.histograms.push_back(std::move(h));
  }
  return r;
}

SimulationResult cached_run(SimulationConfig cfg) {
  cfg.workers = workers();
  const auto path = cache_dir() / cache_key(cfg);
  if (std::ifstream in(path); in) {
    try {
      return from_json(nlohmann::json::parse(in), cfg);
    } catch (const std::exception& e) {
      std::cerr << "ignoring cache entry " << path << ": " << e.what() << '\n';
    }
  }
  const auto start = std::chrono::steady_clock::now();
  SimulationResult r = run_simulation(cfg);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "simulated beta=" << cfg.ensemble.beta << " n=" << cfg.ensemble.n
            << " samples=" << cfg.samples << " in " << seconds << " s\n";
  std::error_code ec;
  std::filesystem::create_directories(cache_dir(), ec);
  const auto tmp = path.string() + ".tmp" + std::to_string(::getpid());
  if (std::ofstream out(tmp); out) {
    out << to_json(r).dump();
    out.close();
    std::filesystem::rename(tmp, path, ec);
  }
  return r;
}

// N = 100 run shared by the bulk, edge, exponent, tail and crowding criteria.
enum SharedProbe { kBulkDos, kEdgeDosFine, kEdgeDosCoarse, kEdgeGap };

const SimulationResult& shared_run(double beta) {
  static std::map<double, SimulationResult> runs;
  if (auto it = runs.find(beta); it != runs.end()) return it->second;
  SimulationConfig cfg;
  cfg.ensemble = {beta, kN, kSeed};
  cfg.samples = kSamples;
  const double s = edge_scale(kN);
  cfg.probes = {default_probe(Observable::dos, Rescaling::bulk, kN),
                default_probe(Observable::dos, Rescaling::edge, kN),
                {Observable::dos, 0.0, 6.0 / s, 60},
                default_probe(Observable::gap, Rescaling::edge, kN)};
  return runs.emplace(beta, cached_run(cfg)).first->second;
}

// ---- criteria -------------------------------------------------------------------------

Verdict bulk_collapse() {
  bool pass = true;
  auto os = fmt();
  for (double beta : {1.0, 2.0, 4.0}) {
    const Curve c = rescale_bulk(shared_run(beta).histograms[kBulkDos], kN);
    const CurveMetrics m = compare_curves(c, shifted_wigner, {0.3, 2.4});
    const bool ok = m.chi2_per_bin < 2.0 && m.sup < 0.02;
    pass &= ok;
    os << "beta=" << beta << ": chi2/bin=" << m.chi2_per_bin << " sup=" << m.sup << "; ";
  }
  os << "need chi2/bin<2, sup<0.02 on x in [0.3,2.4]";
  return {pass, os.str()};
}

Verdict edge_exact_vs_mc() {
  auto exact = [](double r) { return rho_edge_exact(std::max(0.0, r), table()); };
  const auto& run = shared_run(2.0);
  const CurveMetrics coarse =
      compare_curves(rescale_edge(run.histograms[kEdgeDosCoarse], kN), exact, {0.0, 4.0});
  const CurveMetrics fine =
      compare_curves(rescale_edge(run.histograms[kEdgeDosFine], kN), exact, {0.0, 4.0});
  auto os = fmt();
  os << "sup=" << coarse.sup << " over " << coarse.points << " bins (200-bin histogram: sup="
     << fine.sup << ", chi2/bin=" << fine.chi2_per_bin << "); need sup<0.03 on r~ in [0,4]";
  return {coarse.sup < 0.03, os.str()};
}

Verdict repulsion_exponent() {
  bool pass = true;
  auto os = fmt();
  for (double beta : {1.0, 2.0, 4.0}) {
    const Curve c = rescale_edge(shared_run(beta).histograms[kEdgeGap], kN);
    try {
      const LineFit f = fit_power_law(c, 0.05, 0.3);
      const bool ok = std::abs(f.slope - beta) <= 0.15;
      pass &= ok;
      os << "beta=" << beta << ": slope=" << f.slope << " +- " << f.slope_stderr << " ("
         << f.points << " bins); ";
    } catch (const std::invalid_argument& e) {
      pass = false;
      os << "beta=" << beta << ": " << e.what() << "; ";
    }
  }
  os << "need |slope-beta|<=0.15 on r~ in [0.05,0.3]";
  return {pass, os.str()};
}

Verdict gap_amplitudes() {
  const double r0 = 0.05;
  const double ratio = p_typ_exact(r0, table()) / (r0 * r0);
  // Least squares p = a2 r^2 + a4 r^4 + a6 r^6 on 40 points of (0, 0.4].
  double ata[3][3] = {}, atb[3] = {};
  for (int i = 1; i <= 40; ++i) {
    const double r = 0.01 * i, r2 = r * r;
    const double basis[3] = {r2, r2 * r2, r2 * r2 * r2};
    const double y = p_typ_exact(r, table());
    for (int a = 0; a < 3; ++a) {
      atb[a] += basis[a] * y;
      for (int b = 0; b < 3; ++b) ata[a][b] += basis[a] * basis[b];
    }
  }
  // Gaussian elimination on the 3x3 normal equations.
  for (int k = 0; k < 3; ++k) {
    for (int i = k + 1; i < 3; ++i) {
      const double l = ata[i][k] / ata[k][k];
      for (int j = k; j < 3; ++j) ata[i][j] -= l * ata[k][j];
      atb[i] -= l * atb[k];
    }
  }
  double coef[3];
  for (int i = 2; i >= 0; --i) {
    double s = atb[i];
    for (int j = i + 1; j < 3; ++j) s -= ata[i][j] * coef[j];
    coef[i] = s / ata[i][i];
  }
  const bool ratio_ok = std::abs(ratio / 0.5 - 1.0) <= 0.02;
  const bool a4_ok = std::abs(coef[1] - (-0.394)) <= 0.01;
  auto os = fmt();
  os << "p(0.05)/0.05^2=" << ratio << (ratio_ok ? " ok" : " FAIL") << "; fit a2=" << coef[0]
     << " a4=" << coef[1] << (a4_ok ? " ok" : " FAIL") << "; need ratio 0.5+-2%, a4=-0.394+-0.01";
  return {ratio_ok && a4_ok, os.str()};
}

Verdict gap_right_tail() {
  auto os = fmt();
  double worst = 0.0, worst_at = 0.0;
  for (int i = 0; i <= 20; ++i) {
    const double r = 4.0 + 0.1 * i;
    const double rel =
        std::abs(p_typ_exact(r, table()) / asymptote(AsymptoteKind::gap_large_full, 2.0, r) - 1.0);
    if (rel > worst) {
      worst = rel;
      worst_at = r;
    }
  }
  const bool exact_ok = worst <= 0.05;
  os << "beta=2 exact vs full tail: max rel err=" << worst << " at r~=" << worst_at
     << (exact_ok ? " ok" : " FAIL") << "; ";
  bool slopes_ok = true;
  for (double beta : {1.0, 4.0}) {
    const Curve c = rescale_edge(shared_run(beta).histograms[kEdgeGap], kN);
    std::vector<double> x, y, w;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c.x[i] < 2.0 || c.stderr[i] <= 0.0) continue;
      const double counts = (c.y[i] / c.stderr[i]) * (c.y[i] / c.stderr[i]);
      if (counts < 100.0) continue;
      x.push_back(std::pow(c.x[i], 1.5));
      y.push_back(std::log(c.y[i]));
      w.push_back(counts);
    }
    const LineFit f = weighted_line_fit(x, y, w);
    const double target = -2.0 * beta / 3.0;
    const bool ok = std::abs(f.slope / target - 1.0) <= 0.15;
    slopes_ok &= ok;
    os << "beta=" << beta << " MC slope vs r~^{3/2}=" << f.slope << " (target " << target
       << ", " << f.points << " bins from r~=2)" << (ok ? " ok" : " FAIL") << "; ";
  }
  os << "need 5% on [4,6] and slope within 15%";
  return {exact_ok && slopes_ok, os.str()};
}

Verdict conditional_curves() {
  const std::size_t n = 200;
  const double s = edge_scale(n);
  SimulationConfig cfg;
  cfg.ensemble = {2.0, n, kSeed};
  cfg.samples = 2000000;
  cfg.solver = SolverPath::counting;
  cfg.window = ConditionWindow::at_edge(n, 0.1);
  cfg.probes = {{Observable::dos, 0.0, 6.0 / s, 60}, {Observable::gap, 0.0, 6.0 / s, 60}};
  const SimulationResult r = cached_run(cfg);
  const CurveMetrics dos = compare_curves(
      rescale_edge(r.histograms[0], n),
      [](double x) { return rho_edge_conditional(x, 0.0, table()); });
  const CurveMetrics gap = compare_curves(
      rescale_edge(r.histograms[1], n),
      [](double x) { return p_typ_conditional(x, 0.0, table()); });
  // Same curves averaged over the window, weighted by the Tracy-Widom density.
  const double h = 0.1 * s;
  auto window_average = [h](double (*f)(double, double, const EdgeTable&)) {
    return [h, f](double r) {
      double num = 0.0, den = 0.0;
      for (int i = 0; i <= 20; ++i) {
        const double x = -h + 2.0 * h * i / 20.0;
        const EdgePoint p = table().at(x);
        const double w = p.F2 * p.R * (i == 0 || i == 20 ? 0.5 : 1.0);
        num += w * f(r, x, table());
        den += w;
      }
      return num / den;
    };
  };
  const CurveMetrics dos_avg = compare_curves(rescale_edge(r.histograms[0], n),
                                              window_average(rho_edge_conditional));
  const CurveMetrics gap_avg = compare_curves(rescale_edge(r.histograms[1], n),
                                              window_average(p_typ_conditional));
  auto os = fmt();
  os << "accepted " << r.accepted << " of " << cfg.samples << "; dos chi2/bin=" << dos.chi2_per_bin
     << " (sup " << dos.sup << "), gap chi2/bin=" << gap.chi2_per_bin << " (sup " << gap.sup
     << "); need chi2/bin<2; window-averaged curves (informational): dos chi2/bin="
     << dos_avg.chi2_per_bin << ", gap chi2/bin=" << gap_avg.chi2_per_bin;
  return {dos.chi2_per_bin < 2.0 && gap.chi2_per_bin < 2.0, os.str()};
}

Verdict crowding_identity() {
  bool pass = true;
  auto os = fmt();
  for (double beta : {1.0, 2.0, 4.0}) {
    const auto& run = shared_run(beta);
    const Histogram& dos = run.histograms[kEdgeDosFine];
    const Histogram& gap = run.histograms[kEdgeGap];
    const double m = static_cast<double>(kN - 1);
    double worst = 0.0;
    for (std::size_t b = 0; b < 5; ++b) {
      const double d = m * dos.density(b) - gap.density(b);
      const double se = std::hypot(m * dos.stderr_at(b), gap.stderr_at(b));
      worst = std::max(worst, se > 0.0 ? std::abs(d) / se : (d == 0.0 ? 0.0 : INFINITY));
    }
    pass &= worst < 3.0;
    os << "beta=" << beta << ": max pull=" << worst << "; ";
  }
  os << "need < 3 combined stderr on the first 5 bins";
  return {pass, os.str()};
}

Verdict oracle_equivalence() {
  bool pass = true;
  auto os = fmt();
  double worst = 0.0;
  for (std::size_t n : {2u, 3u}) {
    for (double beta : {1.0, 2.0, 4.0}) {
      std::vector<Observable> observables{Observable::gap, Observable::lambda_max};
      if (n == 3) observables.push_back(Observable::dos);
      SimulationConfig cfg;
      cfg.ensemble = {beta, n, kSeed};
      cfg.samples = 1000000;
      cfg.keep_values = true;
      cfg.workers = workers();
      for (Observable o : observables) cfg.probes.push_back({o, -20.0, 20.0, 10});
      const SimulationResult r = run_simulation(cfg);
      os << "N=" << n << " beta=" << beta << ":";
      for (std::size_t k = 0; k < observables.size(); ++k) {
        const OracleCurve c = small_n_oracle(beta, n, observables[k]);
        const double ks = ks_distance(r.values[k], [&](double x) { return c.cdf_at(x); });
        worst = std::max(worst, ks);
        pass &= ks < 0.01;
        os << " " << to_string(observables[k]) << "=" << ks;
      }
      os << "; ";
    }
  }
  os << "max K-S=" << worst << "; need < 0.01";
  return {pass, os.str()};
}

Verdict special_functions() {
  std::vector<std::string> failures;
  auto check = [&](bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  };
  const EdgeTable& t = table();
  check(t.max_ode_residual() < 1e-6, "PII residual");
  bool q_ok = true, f2_ok = true, r_ok = true;
  for (std::size_t i = 0; i < t.size(); ++i) {
    q_ok &= t.q()[i] > 0.0 && (i == 0 || t.q()[i] < t.q()[i - 1]);
    f2_ok &= i == 0 || t.F2()[i] >= t.F2()[i - 1];
    r_ok &= i == 0 || t.R()[i] <= t.R()[i - 1];
  }
  check(q_ok, "q positive decreasing");
  check(f2_ok && t.F2().front() < 1e-8 && 1.0 - t.F2().back() < 1e-8, "F2 limits/monotone");
  check(r_ok && t.R().back() < 1e-8, "R monotone/limit");

  EdgeTableOptions fine_opt;
  fine_opt.step = t.step() / 2.0;
  const EdgeTable fine = build_edge_table(fine_opt);
  double drift = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    drift = std::max({drift, std::abs(t.q()[i] - fine.q()[2 * i]),
                      std::abs(t.F2()[i] - fine.F2()[2 * i])});
  }
  for (double r : {0.0, 1.0, 2.0, 3.0, 4.0, 5.0}) {
    drift = std::max({drift, std::abs(rho_edge_exact(r, t) - rho_edge_exact(r, fine)),
                      std::abs(p_typ_exact(r, t) - p_typ_exact(r, fine))});
  }
  check(drift < 1e-4, "grid-halving drift");

  double f_residual = 0.0, f_boundary = 0.0;
  const double c = f_tilde_normalization();
  for (double r : {-2.0, 0.5, 3.0}) {
    const FTildeSolution f = solve_f_tilde(r, t);
    f_residual = std::max(f_residual, f.max_relative_residual(t));
    f_boundary = std::max(f_boundary, std::abs(f.values.back() - c * airy_ai(t.x_max() - r)));
  }
  check(f_residual < 1e-6, "f~ residual");
  check(f_boundary < 1e-8, "f~ boundary");

  const double mass = integrate_panels([&](double r) { return p_typ_exact(r, t); }, 0.0, 6.0);
  check(std::abs(mass - 1.0) < 1e-3, "p~ normalization");

  const double ai0 = std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0);
  const double aip0 = -std::pow(3.0, -1.0 / 3.0) / std::tgamma(1.0 / 3.0);
  const double airy_err = std::max(std::abs(airy_ai(0.0) - ai0), std::abs(airy_ai_prime(0.0) - aip0));
  check(airy_err < 1e-12, "Airy at 0");

  auto os = fmt();
  os << "PII residual=" << t.max_ode_residual() << " drift=" << drift << " f~ residual="
     << f_residual << " f~ boundary=" << f_boundary << " int p~=" << std::setprecision(8) << mass
     << std::setprecision(3) << " Airy(0) err=" << airy_err;
  for (const auto& f : failures) os << "; FAIL " << f;
  return {failures.empty(), os.str()};
}

Verdict matching() {
  const std::size_t n = 200;
  const double nn = static_cast<double>(n);
  const double s = edge_scale(n);
  SimulationConfig cfg;
  cfg.ensemble = {2.0, n, kSeed};
  cfg.samples = kSamples;
  cfg.probes = {default_probe(Observable::dos, Rescaling::bulk, n),
                default_probe(Observable::dos, Rescaling::edge, n)};
  const SimulationResult r = cached_run(cfg);
  const Histogram& bulk = r.histograms[0];
  const Histogram& edge = r.histograms[1];
  // Edge counts below a distance, linear within fine bins.
  std::vector<double> cumulative{0.0};
  for (auto c : edge.counts()) cumulative.push_back(cumulative.back() + static_cast<double>(c));
  auto edge_counts_below = [&](double d) {
    const double pos = (d - edge.lo()) / edge.bin_width();
    const auto k = static_cast<std::size_t>(pos);
    if (k >= edge.bins()) return cumulative.back();
    return cumulative[k] + (pos - static_cast<double>(k)) * (cumulative[k + 1] - cumulative[k]);
  };
  const double lo = 2.5 / s, hi = 6.0 / s;
  const Curve bulk_curve = rescale_bulk(bulk, n);
  double worst = 0.0, theory_worst = 0.0;
  std::size_t used = 0;
  for (std::size_t b = 0; b < bulk.bins(); ++b) {
    const double a = bulk.bin_left(b), e = bulk.bin_right(b);
    if (a < lo || e > hi) continue;
    const double counts = edge_counts_below(e) - edge_counts_below(a);
    const double edge_density = counts / (static_cast<double>(edge.n_events()) * (e - a));
    // Edge scaling value averaged over the bin, mapped to bulk units: y = sqrt(2) N^{-1/3} rho~.
    const double rho_tilde = edge_density / (std::numbers::sqrt2 * std::pow(nn, -5.0 / 6.0));
    const double from_edge = std::numbers::sqrt2 * std::pow(nn, -1.0 / 3.0) * rho_tilde;
    worst = std::max(worst, std::abs(from_edge / bulk_curve.y[b] - 1.0));
    // Scaling functions themselves: exact edge curve against the bulk semicircle.
    const double x = bulk_curve.x[b];
    const double rt = x * std::numbers::sqrt2 * std::pow(nn, 2.0 / 3.0);
    const double theory = std::numbers::sqrt2 * std::pow(nn, -1.0 / 3.0) * rho_edge_exact(rt, table());
    theory_worst = std::max(theory_worst, std::abs(theory / shifted_wigner(x) - 1.0));
    ++used;
  }
  auto os = fmt();
  os << used << " bulk bins in r~ in [2.5,6]: max rel discrepancy=" << worst
     << " (exact edge curve vs semicircle there: " << theory_worst << ", informational)"
     << "; need < 0.05";
  return {used > 0 && worst < 0.05, os.str()};
}

struct Criterion {
  const char* id;
  Verdict (*run)();
};

constexpr Criterion kCriteria[] = {
    {"bulk-collapse", bulk_collapse},
    {"edge-exact-vs-mc", edge_exact_vs_mc},
    {"repulsion-exponent", repulsion_exponent},
    {"gap-amplitudes", gap_amplitudes},
    {"gap-right-tail", gap_right_tail},
    {"conditional-curves", conditional_curves},
    {"crowding-identity", crowding_identity},
    {"oracle-equivalence", oracle_equivalence},
    {"special-functions", special_functions},
    {"edge-bulk-matching", matching},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> wanted(argv + 1, argv + argc);
  for (const auto& w : wanted) {
    const bool known = std::any_of(std::begin(kCriteria), std::end(kCriteria),
                                   [&](const Criterion& c) { return w == c.id; });
    if (!known) {
      std::cerr << "unknown criterion '" << w << "'; available:";
      for (const auto& c : kCriteria) std::cerr << ' ' << c.id;
      std::cerr << '\n';
      return 2;
    }
  }
  int failed = 0;
  for (const auto& c : kCriteria) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    Verdict v{false, ""};
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    std::cout << (v.pass ? "PASS " : "FAIL ") << c.id << ": " << v.detail << std::endl;
    failed += v.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
