#pragma once

namespace softedge {

/// Airy function values at one point.
struct AiryValues {
  double ai;
  double ai_prime;
  double bi;
  double bi_prime;
};

/**
 * Ai, Ai', Bi, Bi' at x. Maclaurin series in extended precision for moderate |x|,
 * Poincare asymptotic expansions beyond the switchover points below. Absolute
 * accuracy is better than 1e-12 for Ai and Ai' on [-20, 20].
 */
AiryValues airy(double x);

double airy_ai(double x);
double airy_ai_prime(double x);

/// Integral of Ai from x to +infinity. Equals 1/3 at 0, tends to 1 (x -> -inf) and 0 (x -> +inf).
double airy_integral(double x);

namespace airy_detail {
// Series is used on [kSeriesMin, kSeriesMax]; expansions outside.
inline constexpr double kSeriesMin = -8.0;
inline constexpr double kSeriesMax = 6.5;

AiryValues series(double x);
AiryValues asymptotic(double x);
}  // namespace airy_detail

}  // namespace softedge
