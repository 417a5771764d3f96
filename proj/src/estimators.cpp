#include "softedge/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace softedge {

std::string to_string(Observable o) {
  switch (o) {
    case Observable::dos: return "dos";
    case Observable::gap: return "gap";
    case Observable::density: return "density";
    case Observable::lambda_max: return "lambda-max";
  }
  return "unknown";
}

std::string to_string(Rescaling r) {
  switch (r) {
    case Rescaling::none: return "none";
    case Rescaling::bulk: return "bulk";
    case Rescaling::edge: return "edge";
  }
  return "unknown";
}

Observable parse_observable(std::string_view name) {
  for (Observable o : {Observable::dos, Observable::gap, Observable::density,
                       Observable::lambda_max}) {
    if (to_string(o) == name) return o;
  }
  throw std::invalid_argument("unknown observable: " + std::string(name));
}

Rescaling parse_rescaling(std::string_view name) {
  for (Rescaling r : {Rescaling::none, Rescaling::bulk, Rescaling::edge}) {
    if (to_string(r) == name) return r;
  }
  throw std::invalid_argument("unknown rescaling: " + std::string(name));
}

bool is_edge_compatible(Observable o) { return o == Observable::dos || o == Observable::gap; }

Histogram::Histogram(Observable kind, double lo, double hi, std::size_t bins)
    : kind_(kind), lo_(lo), hi_(hi), counts_(bins, 0) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) {
    throw std::invalid_argument("Histogram: need finite lo < hi");
  }
  if (bins == 0) throw std::invalid_argument("Histogram: need at least one bin");
}

double Histogram::bin_left(std::size_t b) const noexcept {
  return lo_ + (hi_ - lo_) * static_cast<double>(b) / static_cast<double>(bins());
}

double Histogram::bin_right(std::size_t b) const noexcept { return bin_left(b + 1); }

void Histogram::add(double value) {
  ++n_events_;
  if (!(value >= lo_ && value < hi_)) {
    ++out_of_range_;
    return;
  }
  auto b = static_cast<std::size_t>((value - lo_) / (hi_ - lo_) * static_cast<double>(bins()));
  if (b >= bins()) b = bins() - 1;
  ++counts_[b];
}

void Histogram::add_to_bin(std::size_t b, std::uint64_t count) {
  counts_.at(b) += count;
  n_events_ += count;
}

void Histogram::add_out_of_range(std::uint64_t count) {
  out_of_range_ += count;
  n_events_ += count;
}

double Histogram::density(std::size_t b) const {
  if (n_events_ == 0) return 0.0;
  return static_cast<double>(counts_.at(b)) / (static_cast<double>(n_events_) * bin_width());
}

double Histogram::stderr_at(std::size_t b) const {
  if (n_events_ == 0) return 0.0;
  return std::sqrt(static_cast<double>(counts_.at(b))) /
         (static_cast<double>(n_events_) * bin_width());
}

bool Histogram::same_layout(const Histogram& other) const noexcept {
  return kind_ == other.kind_ && lo_ == other.lo_ && hi_ == other.hi_ && bins() == other.bins();
}

Histogram merge(const Histogram& a, const Histogram& b) {
  if (!a.same_layout(b)) throw std::invalid_argument("merge: histogram layouts differ");
  Histogram out = a;
  for (std::size_t i = 0; i < b.bins(); ++i) out.add_to_bin(i, b.counts()[i]);
  out.add_out_of_range(b.out_of_range());
  for (std::uint64_t i = 0; i < b.n_samples(); ++i) out.add_sample();
  return out;
}

void Curve::validate() const {
  if (y.size() != x.size() || stderr.size() != x.size()) {
    throw std::invalid_argument("Curve: x, y and stderr lengths differ");
  }
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) throw std::invalid_argument("Curve: x must be strictly increasing");
  }
}

double Curve::interpolate(double at) const {
  if (x.empty() || at < x.front() || at > x.back()) {
    throw std::out_of_range("Curve::interpolate: abscissa outside the curve");
  }
  auto it = std::upper_bound(x.begin(), x.end(), at);
  if (it == x.end()) return y.back();
  const std::size_t j = static_cast<std::size_t>(it - x.begin());
  const std::size_t i = j - 1;
  const double t = (at - x[i]) / (x[j] - x[i]);
  return y[i] + t * (y[j] - y[i]);
}

Curve BinnedCurve::curve() const {
  Curve c;
  c.x.resize(size());
  for (std::size_t i = 0; i < size(); ++i) c.x[i] = 0.5 * (bin_left[i] + bin_right[i]);
  c.y = density;
  c.stderr = stderr;
  return c;
}

ConditionWindow ConditionWindow::at_edge(std::size_t n, double half_width) {
  ConditionWindow w{std::sqrt(2.0 * static_cast<double>(n)), half_width};
  w.validate();
  return w;
}

void ConditionWindow::validate() const {
  if (!std::isfinite(center) || !std::isfinite(half_width) || !(half_width > 0.0)) {
    throw std::invalid_argument("ConditionWindow: need finite center and half_width > 0");
  }
}

bool ConditionWindow::contains(double lambda_max) const noexcept {
  return std::abs(lambda_max - center) < half_width;
}

void accumulate_dos(const Spectrum& s, Histogram& h) {
  if (s.size() < 2) throw std::domain_error("accumulate_dos: need at least two eigenvalues");
  const double top = s.lambda_max();
  for (std::size_t i = 1; i < s.size(); ++i) h.add(top - s[i]);
  h.add_sample();
}

void accumulate_gap(const Spectrum& s, Histogram& h) {
  h.add(s.gap());
  h.add_sample();
}

void accumulate_global_density(const Spectrum& s, Histogram& h) {
  for (double v : s.values()) h.add(v);
  h.add_sample();
}

void accumulate_lambda_max(const Spectrum& s, Histogram& h) {
  h.add(s.lambda_max());
  h.add_sample();
}

void accumulate(const Spectrum& s, Histogram& h) {
  switch (h.kind()) {
    case Observable::dos: accumulate_dos(s, h); return;
    case Observable::gap: accumulate_gap(s, h); return;
    case Observable::density: accumulate_global_density(s, h); return;
    case Observable::lambda_max: accumulate_lambda_max(s, h); return;
  }
}

bool condition_accept(const Spectrum& s, const ConditionWindow& w) {
  return w.contains(s.lambda_max());
}

double edge_scale(std::size_t n) {
  return std::numbers::sqrt2 * std::pow(static_cast<double>(n), 1.0 / 6.0);
}

BinnedCurve rescale(const Histogram& h, std::size_t n, Rescaling rescaling) {
  if (n == 0) throw std::invalid_argument("rescale: n must be positive");
  const double nn = static_cast<double>(n);
  const bool position = h.kind() == Observable::density || h.kind() == Observable::lambda_max;
  const bool per_eigenvalue = h.kind() == Observable::dos || h.kind() == Observable::density;
  double shift = 0.0, x_scale = 1.0, y_scale = 1.0;
  switch (rescaling) {
    case Rescaling::none:
      break;
    case Rescaling::bulk:
      x_scale = 1.0 / std::sqrt(nn);
      y_scale = std::sqrt(nn);
      break;
    case Rescaling::edge:
      x_scale = edge_scale(n);
      if (position) shift = std::sqrt(2.0 * nn);
      y_scale = per_eigenvalue ? 1.0 / (std::numbers::sqrt2 * std::pow(nn, -5.0 / 6.0))
                               : 1.0 / edge_scale(n);
      break;
  }
  BinnedCurve out;
  for (std::size_t b = 0; b < h.bins(); ++b) {
    out.bin_left.push_back((h.bin_left(b) - shift) * x_scale);
    out.bin_right.push_back((h.bin_right(b) - shift) * x_scale);
    out.density.push_back(h.density(b) * y_scale);
    out.stderr.push_back(h.stderr_at(b) * y_scale);
    out.counts.push_back(h.counts()[b]);
  }
  return out;
}

Curve rescale_bulk(const Histogram& h, std::size_t n) { return rescale(h, n, Rescaling::bulk).curve(); }

Curve rescale_edge(const Histogram& h, std::size_t n) { return rescale(h, n, Rescaling::edge).curve(); }

namespace {

CurveMetrics compare_impl(const Curve& c, const std::function<double(double)>& ref,
                          const std::function<double(double)>& ref_err,
                          const std::function<bool(double)>& in_ref, CompareRange range) {
  c.validate();
  CurveMetrics m;
  double chi2 = 0.0, l2 = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double x = c.x[i];
    if (x < range.lo || x > range.hi || !in_ref(x)) continue;
    const double d = c.y[i] - ref(x);
    const double dx = c.size() == 1 ? 1.0
                      : i == 0      ? c.x[1] - c.x[0]
                      : i + 1 == c.size()
                          ? c.x[i] - c.x[i - 1]
                          : 0.5 * (c.x[i + 1] - c.x[i - 1]);
    m.sup = std::max(m.sup, std::abs(d));
    l2 += d * d * dx;
    const double e = ref_err(x);
    const double var = c.stderr[i] * c.stderr[i] + e * e;
    if (var > 0.0) {
      chi2 += d * d / var;
      ++m.chi2_points;
    }
    ++m.points;
  }
  if (m.points == 0) throw std::invalid_argument("compare_curves: curves do not overlap");
  m.l2 = std::sqrt(l2);
  m.chi2_per_bin = m.chi2_points ? chi2 / static_cast<double>(m.chi2_points) : 0.0;
  return m;
}

}  // namespace

CurveMetrics compare_curves(const Curve& c, const Curve& ref, CompareRange range) {
  ref.validate();
  if (ref.size() == 0) throw std::invalid_argument("compare_curves: empty reference");
  Curve ref_err{ref.x, ref.stderr, ref.stderr};
  return compare_impl(
      c, [&](double x) { return ref.interpolate(x); },
      [&](double x) { return ref_err.interpolate(x); },
      [&](double x) { return x >= ref.x.front() && x <= ref.x.back(); }, range);
}

CurveMetrics compare_curves(const Curve& c, const std::function<double(double)>& ref,
                            CompareRange range) {
  return compare_impl(
      c, ref, [](double) { return 0.0; }, [](double) { return true; }, range);
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_distance: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

LineFit weighted_line_fit(const std::vector<double>& x, const std::vector<double>& y,
                          const std::vector<double>& w) {
  if (x.size() != y.size() || x.size() != w.size()) {
    throw std::invalid_argument("weighted_line_fit: length mismatch");
  }
  if (x.size() < 2) throw std::invalid_argument("weighted_line_fit: need at least two points");
  double sw = 0, sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sw += w[i];
    sx += w[i] * x[i];
    sy += w[i] * y[i];
  }
  const double mx = sx / sw, my = sy / sw;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += w[i] * (x[i] - mx) * (x[i] - mx);
    sxy += w[i] * (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("weighted_line_fit: degenerate abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.slope_stderr = 1.0 / std::sqrt(sxx);
  fit.points = x.size();
  return fit;
}

LineFit fit_power_law(const Curve& c, double lo, double hi, double min_counts) {
  std::vector<double> lx, ly, w;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c.x[i] < lo || c.x[i] > hi || !(c.y[i] > 0.0) || !(c.x[i] > 0.0)) continue;
    const double weight =
        c.stderr[i] > 0.0 ? (c.y[i] / c.stderr[i]) * (c.y[i] / c.stderr[i]) : min_counts;
    if (weight < min_counts) continue;
    lx.push_back(std::log(c.x[i]));
    ly.push_back(std::log(c.y[i]));
    w.push_back(weight);
  }
  if (lx.size() < 2) {
    std::ostringstream msg;
    msg << "fit_power_law: fewer than two usable points on [" << lo << ", " << hi << "]";
    throw std::invalid_argument(msg.str());
  }
  return weighted_line_fit(lx, ly, w);
}

}  // namespace softedge
