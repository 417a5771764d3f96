#include "softedge/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "softedge/asymptotics.hpp"
#include "softedge/csv_io.hpp"
#include "softedge/densities.hpp"
#include "softedge/edge_table.hpp"
#include "softedge/monte_carlo.hpp"
#include "softedge/oracle.hpp"
#include "softedge/scaling_functions.hpp"

namespace softedge {

namespace {

using nlohmann::json;

// Bad flag values discovered after parsing.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

struct SimulateArgs {
  double beta = 2.0;
  std::size_t n = 100;
  std::uint64_t samples = 200000;
  std::uint64_t seed = 42;
  std::string observable = "dos";
  std::string rescaling = "none";
  double window = kUnset;
  double window_center = kUnset;
  std::size_t bins = 0;
  double lo = kUnset;
  double hi = kUnset;
  unsigned workers = 0;
  std::string solver = "counting";
};

struct ExactArgs {
  std::string function;
  double beta = 2.0;
  double x = 0.0;
  std::string kind;
  double r_min = kUnset;
  double r_max = kUnset;
  std::size_t points = 301;
  double step = 1.0 / 512.0;
};

struct CompareArgs {
  std::string a, b;
  double max_sup = kUnset;
  double max_l2 = kUnset;
  double max_chi2 = kUnset;
  double range_min = -std::numeric_limits<double>::infinity();
  double range_max = std::numeric_limits<double>::infinity();
};

struct OracleArgs {
  double beta = 2.0;
  std::size_t n = 2;
  std::string observable = "gap";
  std::size_t points = 241;
  double r_max = 0.0;
};

// Output sink: explicit path, "-" for stdout, else $SOFTEDGE_OUTPUT_DIR/<default_name>, else stdout.
class Sink {
 public:
  Sink(const std::string& path, const std::string& default_name, std::ostream& fallback)
      : stream_(&fallback) {
    std::filesystem::path target;
    if (!path.empty() && path != "-") {
      target = path;
    } else if (path.empty()) {
      if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) {
        target = std::filesystem::path(dir) / default_name;
      }
    }
    if (!target.empty()) {
      if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
      file_ = std::make_unique<std::ofstream>(target);
      if (!*file_) throw std::runtime_error("cannot open output file " + target.string());
      stream_ = file_.get();
      path_ = target.string();
    }
  }
  std::ostream& stream() { return *stream_; }
  const std::string& path() const { return path_; }
  void finish() {
    stream_->flush();
    if (!*stream_) throw std::runtime_error("write failed" + (path_.empty() ? "" : ": " + path_));
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
  std::string path_;
};

std::string format_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::vector<double> linspace(double a, double b, std::size_t points) {
  if (points < 2) throw UsageError("--points must be at least 2");
  if (!(b > a)) throw UsageError("empty abscissa range");
  std::vector<double> x(points);
  for (std::size_t i = 0; i < points; ++i) {
    x[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return x;
}

int cmd_simulate(const SimulateArgs& a, const std::string& output, std::ostream& out,
                 std::ostream& err) {
  SimulationConfig cfg;
  Observable observable;
  Rescaling rescaling;
  try {
    observable = parse_observable(a.observable);
    rescaling = parse_rescaling(a.rescaling);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  cfg.ensemble = {a.beta, a.n, a.seed};
  cfg.samples = a.samples;
  cfg.workers = a.workers ? a.workers : std::max(1u, std::thread::hardware_concurrency());
  if (a.solver == "counting") {
    cfg.solver = SolverPath::counting;
  } else if (a.solver == "full") {
    cfg.solver = SolverPath::full;
  } else {
    throw UsageError("--solver must be counting or full");
  }
  Probe probe = default_probe(observable, rescaling, a.n);
  if (a.bins) probe.bins = a.bins;
  if (!std::isnan(a.lo)) probe.lo = a.lo;
  if (!std::isnan(a.hi)) probe.hi = a.hi;
  cfg.probes = {probe};
  if (!std::isnan(a.window)) {
    ConditionWindow w = ConditionWindow::at_edge(std::max<std::size_t>(a.n, 1), 1.0);
    w.half_width = a.window;
    if (!std::isnan(a.window_center)) w.center = a.window_center;
    cfg.window = w;
  } else if (!std::isnan(a.window_center)) {
    throw UsageError("--window-center requires --window");
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const SimulationResult result = run_simulation(cfg);
  const Histogram& h = result.histograms.front();
  json meta = {
      {"command", "simulate"},
      {"beta", a.beta},
      {"n", a.n},
      {"samples", a.samples},
      {"seed", a.seed},
      {"observable", to_string(observable)},
      {"rescaling", to_string(rescaling)},
      {"window", cfg.window ? json{{"center", cfg.window->center},
                                   {"half_width", cfg.window->half_width}}
                            : json(nullptr)},
      {"bins", h.bins()},
      {"lo", h.lo()},
      {"hi", h.hi()},
      {"solver", a.solver},
      {"accepted", result.accepted},
      {"n_events", h.n_events()},
      {"out_of_range", h.out_of_range()},
      {"version", SOFTEDGE_VERSION},
  };
  std::ostringstream name;
  name << "simulate_" << to_string(observable) << "_beta" << format_number(a.beta) << "_n" << a.n
       << "_" << to_string(rescaling) << (cfg.window ? "_window" : "") << ".csv";
  Sink sink(output, name.str(), out);
  write_binned_csv(sink.stream(), rescale(h, a.n, rescaling), meta);
  sink.finish();
  err << "simulate: accepted " << result.accepted << " of " << a.samples << " samples"
      << (sink.path().empty() ? "" : "; wrote " + sink.path()) << '\n';
  return kExitOk;
}

int cmd_exact(const ExactArgs& a, const std::string& output, std::ostream& out,
              std::ostream& err) {
  const std::string& fn = a.function;
  auto require_beta2 = [&] {
    if (a.beta != 2.0) {
      throw UsageError("function " + fn + " is only available for beta = 2 (got beta = " +
                       format_number(a.beta) + ")");
    }
  };
  std::optional<EdgeTable> table;
  auto edge_table = [&]() -> const EdgeTable& {
    if (!table) {
      EdgeTableOptions opt;
      opt.step = a.step;
      try {
        table = build_edge_table(opt);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
    return *table;
  };
  json meta = {{"command", "exact"}, {"function", fn}, {"beta", a.beta},
               {"version", SOFTEDGE_VERSION}};

  if (fn == "f2-table") {
    require_beta2();
    meta["step"] = a.step;
    Sink sink(output, "exact_f2-table.csv", out);
    write_table_csv(sink.stream(), edge_table(), meta);
    sink.finish();
    return kExitOk;
  }

  double lo = 0.0, hi = 6.0;
  std::function<double(double)> f;
  if (fn == "rho-edge") {
    require_beta2();
    f = [&](double r) { return rho_edge_exact(r, edge_table()); };
  } else if (fn == "p-typ") {
    require_beta2();
    f = [&](double r) { return p_typ_exact(r, edge_table()); };
  } else if (fn == "rho-edge-conditional") {
    require_beta2();
    meta["x"] = a.x;
    f = [&](double r) { return rho_edge_conditional(r, a.x, edge_table()); };
  } else if (fn == "p-typ-conditional") {
    require_beta2();
    meta["x"] = a.x;
    f = [&](double r) { return p_typ_conditional(r, a.x, edge_table()); };
  } else if (fn == "edge-density") {
    if (a.beta != 1.0 && a.beta != 2.0 && a.beta != 4.0) {
      throw UsageError("edge-density has a closed form only for beta in {1, 2, 4}");
    }
    lo = -8.0;
    hi = 4.0;
    f = [&](double x) { return edge_density(a.beta, x); };
  } else if (fn == "wigner") {
    lo = -1.5;
    hi = 1.5;
    f = wigner;
  } else if (fn == "shifted-wigner") {
    hi = 3.0;
    f = shifted_wigner;
  } else if (fn == "tw-density") {
    require_beta2();
    lo = -8.0;
    hi = 5.0;
    f = [&](double x) {
      const EdgePoint p = edge_table().at(x);
      return p.R * p.F2;
    };
  } else if (fn == "asymptote") {
    AsymptoteKind kind;
    try {
      kind = parse_asymptote_kind(a.kind);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    meta["kind"] = a.kind;
    if (kind == AsymptoteKind::edge_density_left) {
      lo = -8.0;
      hi = 0.0;
    } else {
      lo = 0.05;
    }
    try {
      asymptote(kind, a.beta, 1.0);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    f = [kind, beta = a.beta](double r) { return asymptote(kind, beta, r); };
  } else {
    throw UsageError("unknown function '" + fn +
                     "' (rho-edge, p-typ, rho-edge-conditional, p-typ-conditional, "
                     "edge-density, wigner, shifted-wigner, tw-density, f2-table, asymptote)");
  }
  if (!std::isnan(a.r_min)) lo = a.r_min;
  if (!std::isnan(a.r_max)) hi = a.r_max;
  const auto xs = linspace(lo, hi, a.points);
  std::vector<double> ys;
  ys.reserve(xs.size());
  for (double x : xs) ys.push_back(f(x));
  meta["r_min"] = lo;
  meta["r_max"] = hi;
  meta["points"] = a.points;
  Sink sink(output, "exact_" + fn + ".csv", out);
  write_xy_csv(sink.stream(), xs, ys, meta);
  sink.finish();
  if (!sink.path().empty()) err << "exact: wrote " << sink.path() << '\n';
  return kExitOk;
}

CurveFile load_curve(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return read_curve_csv(in);
  } catch (const CsvError& e) {
    throw CsvError(path + ": " + e.what());
  }
}

int cmd_compare(const CompareArgs& a, const std::string& output, std::ostream& out,
                std::ostream& err) {
  const CurveFile ca = load_curve(a.a);
  const CurveFile cb = load_curve(a.b);
  const CurveMetrics m = compare_curves(ca.curve, cb.curve, {a.range_min, a.range_max});
  bool pass = true;
  json thresholds = json::object();
  auto check = [&](const char* name, double value, double limit) {
    if (std::isnan(limit)) return;
    thresholds[name] = limit;
    if (!(value <= limit)) pass = false;
  };
  check("sup", m.sup, a.max_sup);
  check("l2", m.l2, a.max_l2);
  check("chi2_per_bin", m.chi2_per_bin, a.max_chi2);
  const json report = {{"a", a.a},           {"b", a.b},
                       {"sup", m.sup},       {"l2", m.l2},
                       {"chi2_per_bin", m.chi2_per_bin},
                       {"points", m.points}, {"chi2_points", m.chi2_points},
                       {"thresholds", thresholds},
                       {"pass", pass}};
  Sink sink(output, "compare.json", out);
  sink.stream() << report.dump(2) << '\n';
  sink.finish();
  if (!pass) err << "compare: thresholds exceeded\n";
  return pass ? kExitOk : kExitComparisonFailed;
}

int cmd_oracle(const OracleArgs& a, const std::string& output, std::ostream& out,
               std::ostream& err) {
  Observable observable;
  try {
    observable = parse_observable(a.observable);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (a.n != 2 && a.n != 3) {
    throw UsageError("oracle: quadrature is supported only for n = 2 or 3 (got " +
                     std::to_string(a.n) + ")");
  }
  if (observable == Observable::density) throw UsageError("oracle: density is not supported");
  if (!(a.beta > 0.0)) throw UsageError("oracle: beta must be positive");
  const OracleCurve c = small_n_oracle(a.beta, a.n, observable, a.points, a.r_max);
  const json meta = {{"command", "oracle"},
                     {"beta", a.beta},
                     {"n", a.n},
                     {"observable", to_string(observable)},
                     {"points", a.points},
                     {"mass", c.mass()},
                     {"version", SOFTEDGE_VERSION}};
  std::ostringstream name;
  name << "oracle_" << to_string(observable) << "_beta" << format_number(a.beta) << "_n" << a.n
       << ".csv";
  Sink sink(output, name.str(), out);
  write_xy_csv(sink.stream(), c.density.x, c.density.y, meta);
  sink.finish();
  if (!sink.path().empty()) err << "oracle: wrote " << sink.path() << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Near-extreme eigenvalue statistics of Gaussian beta-ensembles", "softedge"};
  app.require_subcommand(1);
  std::string output;

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo histogram over tridiagonal samples");
  simulate->add_option("--beta", sim.beta, "Dyson index (> 0)")->capture_default_str();
  simulate->add_option("--n", sim.n, "matrix size")->capture_default_str();
  simulate->add_option("--samples", sim.samples, "number of matrices")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "64-bit seed")->capture_default_str();
  simulate->add_option("--observable", sim.observable, "dos | gap | density | lambda-max")
      ->capture_default_str();
  simulate->add_option("--rescaling", sim.rescaling, "none | bulk | edge")->capture_default_str();
  simulate->add_option("--window", sim.window,
                       "keep samples with |lambda_max - sqrt(2N)| < WINDOW (dos, gap)");
  simulate->add_option("--window-center", sim.window_center, "override the window center");
  simulate->add_option("--bins", sim.bins, "number of bins");
  simulate->add_option("--lo", sim.lo, "histogram lower edge (unscaled units)");
  simulate->add_option("--hi", sim.hi, "histogram upper edge (unscaled units)");
  simulate->add_option("--workers", sim.workers, "threads (default: hardware concurrency)");
  simulate->add_option("--solver", sim.solver, "counting | full")->capture_default_str();
  simulate->add_option("-o,--output", output, "output file ('-' for stdout)");

  ExactArgs ex;
  auto* exact = app.add_subcommand("exact", "Exact and asymptotic scaling functions");
  exact->add_option("--function", ex.function, "function name")->required();
  exact->add_option("--beta", ex.beta, "Dyson index")->capture_default_str();
  exact->add_option("--x", ex.x, "rescaled lambda_max for conditional functions")
      ->capture_default_str();
  exact->add_option("--kind", ex.kind, "asymptote kind (with --function asymptote)");
  exact->add_option("--r-min", ex.r_min, "left end of the abscissa range");
  exact->add_option("--r-max", ex.r_max, "right end of the abscissa range");
  exact->add_option("--points", ex.points, "grid points")->capture_default_str();
  exact->add_option("--step", ex.step, "Painleve table step")->capture_default_str();
  exact->add_option("-o,--output", output, "output file ('-' for stdout)");

  CompareArgs cmp;
  auto* compare = app.add_subcommand("compare", "Compare two curve files");
  compare->add_option("a", cmp.a, "curve file")->required();
  compare->add_option("b", cmp.b, "reference curve file")->required();
  compare->add_option("--max-sup", cmp.max_sup, "sup-norm threshold");
  compare->add_option("--max-l2", cmp.max_l2, "L2 threshold");
  compare->add_option("--max-chi2", cmp.max_chi2, "chi^2 per bin threshold");
  compare->add_option("--range-min", cmp.range_min, "compare only x >= range-min");
  compare->add_option("--range-max", cmp.range_max, "compare only x <= range-max");
  compare->add_option("-o,--output", output, "metrics file ('-' for stdout)");

  OracleArgs orc;
  auto* oracle = app.add_subcommand("oracle", "Small-N quadrature of the joint eigenvalue law");
  oracle->add_option("--beta", orc.beta, "Dyson index")->capture_default_str();
  oracle->add_option("--n", orc.n, "matrix size (2 or 3)")->capture_default_str();
  oracle->add_option("--observable", orc.observable, "gap | dos | lambda-max")
      ->capture_default_str();
  oracle->add_option("--points", orc.points, "grid points")->capture_default_str();
  oracle->add_option("--r-max", orc.r_max, "range (default: automatic)");
  oracle->add_option("-o,--output", output, "output file ('-' for stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*simulate) return cmd_simulate(sim, output, out, err);
    if (*exact) return cmd_exact(ex, output, out, err);
    if (*compare) return cmd_compare(cmp, output, out, err);
    return cmd_oracle(orc, output, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace softedge
