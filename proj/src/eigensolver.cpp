#include "softedge/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace softedge {

Spectrum::Spectrum(std::vector<double> values) : values_(std::move(values)) {
  std::stable_sort(values_.begin(), values_.end(), std::greater<>());
}

double Spectrum::lambda_max() const {
  if (values_.empty()) throw std::domain_error("Spectrum: empty");
  return values_.front();
}

double Spectrum::gap() const {
  if (values_.size() < 2) throw std::domain_error("Spectrum: gap needs at least two eigenvalues");
  return values_[0] - values_[1];
}

namespace {

constexpr int kMaxQlIterations = 60;

// Implicit-shift QL on (d, e); e[i] couples rows i and i + 1, e[n-1] is scratch.
void ql_implicit(std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = d.size();
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    int iterations = 0;
    for (;;) {
      std::size_t m = l;
      for (; m + 1 < n; ++m) {
        if (std::abs(e[m]) <= eps * (std::abs(d[m]) + std::abs(d[m + 1]))) break;
      }
      if (m == l) break;
      if (++iterations > kMaxQlIterations) {
        throw std::runtime_error("eigenvalues_full: QL iteration did not converge");
      }
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::sqrt(g * g + 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (std::size_t i = m; i-- > l;) {
        const double f = s * e[i];
        const double b = c * e[i];
        // Entries are O(sqrt(n)) here, so the plain norm cannot overflow.
        r = std::sqrt(f * f + g * g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
}

}  // namespace

void eigenvalues_into(const TridiagonalMatrix& m, std::vector<double>& work,
                      std::vector<double>& scratch) {
  const std::size_t n = m.size();
  work.assign(m.diag.begin(), m.diag.end());
  scratch.assign(n, 0.0);
  std::copy(m.offdiag.begin(), m.offdiag.end(), scratch.begin());
  ql_implicit(work, scratch);
  std::stable_sort(work.begin(), work.end(), std::greater<>());
}

Spectrum eigenvalues_full(const TridiagonalMatrix& m) {
  m.validate();
  std::vector<double> values, scratch;
  eigenvalues_into(m, values, scratch);
  return Spectrum(std::move(values));
}

namespace {

struct SturmContext {
  const TridiagonalMatrix& m;
  double pivmin;

  explicit SturmContext(const TridiagonalMatrix& matrix) : m(matrix) {
    double max_e2 = 1.0;
    for (double e : m.offdiag) max_e2 = std::max(max_e2, e * e);
    pivmin = std::numeric_limits<double>::min() * max_e2;
  }

  std::size_t count(double x) const {
    const auto& d = m.diag;
    const auto& e = m.offdiag;
    std::size_t negatives = 0;
    double q = d[0] - x;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++negatives;
    for (std::size_t i = 1; i < d.size(); ++i) {
      q = d[i] - x - e[i - 1] * e[i - 1] / q;
      if (std::abs(q) < pivmin) q = -pivmin;
      if (q < 0.0) ++negatives;
    }
    return negatives;
  }
};

struct Bracket {
  double lo;
  double hi;
  double tol;
};

Bracket initial_bracket(const TridiagonalMatrix& m) {
  const double radius = m.gershgorin_radius();
  const double scale = std::max(radius, std::numeric_limits<double>::min());
  const double pad = 4.0 * std::numeric_limits<double>::epsilon() * scale + 1e-300;
  return {-radius - pad, radius + pad, 1e-12 * scale};
}

}  // namespace

std::size_t sturm_count(const TridiagonalMatrix& m, double x) {
  if (!std::isfinite(x)) {
    if (std::isnan(x)) throw std::invalid_argument("sturm_count: NaN abscissa");
    return x > 0 ? m.size() : 0;
  }
  if (m.diag.empty()) return 0;
  return SturmContext(m).count(x);
}

void sturm_counts(const TridiagonalMatrix& m, std::span<const double> shifts,
                  std::span<std::size_t> out, std::vector<double>& scratch) {
  if (out.size() != shifts.size()) throw std::invalid_argument("sturm_counts: size mismatch");
  const std::size_t k = shifts.size();
  std::fill(out.begin(), out.end(), 0);
  if (m.diag.empty() || k == 0) return;
  const SturmContext sturm(m);
  const double pivmin = sturm.pivmin;
  const auto& d = m.diag;
  const auto& e = m.offdiag;
  // Rows outer, shifts inner: the inner loop has no dependencies and vectorizes.
  scratch.resize(k);
  double* q = scratch.data();
  for (std::size_t j = 0; j < k; ++j) {
    double v = d[0] - shifts[j];
    v = std::abs(v) < pivmin ? -pivmin : v;
    q[j] = v;
    out[j] += v < 0.0;
  }
  for (std::size_t i = 1; i < d.size(); ++i) {
    const double di = d[i];
    const double e2 = e[i - 1] * e[i - 1];
    for (std::size_t j = 0; j < k; ++j) {
      double v = di - shifts[j] - e2 / q[j];
      v = std::abs(v) < pivmin ? -pivmin : v;
      q[j] = v;
      out[j] += v < 0.0;
    }
  }
}

double largest_eigenvalue(const TridiagonalMatrix& m) {
  if (m.diag.empty()) throw std::domain_error("largest_eigenvalue: empty matrix");
  const SturmContext sturm(m);
  const std::size_t n = m.size();
  auto [lo, hi, tol] = initial_bracket(m);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm.count(mid) >= n) hi = mid; else lo = mid;
  }
  return 0.5 * (lo + hi);
}

std::pair<double, double> top_two(const TridiagonalMatrix& m) {
  const std::size_t n = m.size();
  if (n < 2) throw std::domain_error("top_two: need a matrix of size >= 2");
  const SturmContext sturm(m);
  auto [lo1, hi1, tol] = initial_bracket(m);
  double lo2 = lo1, hi2 = hi1;
  // count(x) >= n  <=> x > Lambda_1 ;  count(x) >= n - 1  <=> x > Lambda_2
  while (hi1 - lo1 > tol) {
    const double mid = 0.5 * (lo1 + hi1);
    if (mid <= lo1 || mid >= hi1) break;
    const std::size_t c = sturm.count(mid);
    if (c >= n) {
      hi1 = mid;
    } else {
      lo1 = mid;
      if (c == n - 1) hi2 = std::min(hi2, mid);
      else lo2 = std::max(lo2, mid);
    }
  }
  hi2 = std::min(hi2, hi1);
  while (hi2 - lo2 > tol) {
    const double mid = 0.5 * (lo2 + hi2);
    if (mid <= lo2 || mid >= hi2) break;
    if (sturm.count(mid) >= n - 1) hi2 = mid; else lo2 = mid;
  }
  return {0.5 * (lo1 + hi1), 0.5 * (lo2 + hi2)};
}

}  // namespace softedge
