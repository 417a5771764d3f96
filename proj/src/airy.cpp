#include "softedge/airy.hpp"

#include <cmath>
#include <numbers>

#include "softedge/grid_calculus.hpp"

namespace softedge {

namespace airy_detail {

namespace {

// Ai(0) and -Ai'(0).
constexpr long double kC1 = 0.355028053887817239260063186004183176L;
constexpr long double kC2 = 0.258819403792806798405183560189203963L;
constexpr long double kSqrt3 = 1.732050807568877293527446341505872367L;
constexpr int kMaxSeriesTerms = 200;
constexpr int kMaxAsymptoticTerms = 60;

}  // namespace

AiryValues series(double xd) {
  const long double x = xd;
  const long double x3 = x * x * x;
  // f = sum t_k, g = sum u_k and their derivatives fp = sum a_k, gp = sum b_k.
  long double t = 1.0L, u = x, a = 0.5L * x * x, b = 1.0L;
  long double f = t, g = u, fp = a, gp = b;
  for (int k = 1; k < kMaxSeriesTerms; ++k) {
    const long double kk = k;
    t *= x3 / ((3 * kk - 1) * (3 * kk));
    u *= x3 / ((3 * kk) * (3 * kk + 1));
    if (k >= 2) a *= x3 / ((3 * kk - 3) * (3 * kk - 1));
    b *= x3 / ((3 * kk - 2) * (3 * kk));
    f += t;
    g += u;
    if (k >= 2) fp += a;
    gp += b;
    const long double scale = std::fabs(f) + std::fabs(g) + std::fabs(fp) + std::fabs(gp);
    if (std::fabs(t) + std::fabs(u) + std::fabs(a) + std::fabs(b) < 1e-22L * scale) break;
  }
  AiryValues v;
  v.ai = static_cast<double>(kC1 * f - kC2 * g);
  v.ai_prime = static_cast<double>(kC1 * fp - kC2 * gp);
  v.bi = static_cast<double>(kSqrt3 * (kC1 * f + kC2 * g));
  v.bi_prime = static_cast<double>(kSqrt3 * (kC1 * fp + kC2 * gp));
  return v;
}

AiryValues asymptotic(double x) {
  const double z = std::abs(x);
  const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  const double quarter = std::pow(z, 0.25);
  const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);

  // u_k, v_k coefficients; accumulate the even/odd or alternating partial sums
  // until the terms stop decreasing.
  double uk = 1.0, vk = 1.0, power = 1.0;
  double prev_term = INFINITY;
  if (x > 0) {
    double su_alt = 1.0, sv_alt = 1.0, su = 1.0, sv = 1.0;
    for (int k = 1; k < kMaxAsymptoticTerms; ++k) {
      const double kk = k;
      uk *= (6 * kk - 5) * (6 * kk - 3) * (6 * kk - 1) / ((2 * kk - 1) * 216.0 * kk);
      vk = -(6 * kk + 1) / (6 * kk - 1) * uk;
      power /= zeta;
      const double term = std::abs(uk * power) + std::abs(vk * power);
      if (term >= prev_term || term < 1e-17) break;
      prev_term = term;
      const double sign = (k % 2) ? -1.0 : 1.0;
      su_alt += sign * uk * power;
      sv_alt += sign * vk * power;
      su += uk * power;
      sv += vk * power;
    }
    const double decay = std::exp(-zeta);
    const double growth = std::exp(zeta);
    AiryValues v;
    v.ai = 0.5 * inv_sqrt_pi / quarter * decay * su_alt;
    v.ai_prime = -0.5 * inv_sqrt_pi * quarter * decay * sv_alt;
    v.bi = inv_sqrt_pi / quarter * growth * su;
    v.bi_prime = inv_sqrt_pi * quarter * growth * sv;
    return v;
  }

  // x < 0: oscillatory region, split even (P) and odd (Q) parts.
  double pu = 1.0, qu = 0.0, pv = 1.0, qv = 0.0;
  for (int k = 1; k < kMaxAsymptoticTerms; ++k) {
    const double kk = k;
    uk *= (6 * kk - 5) * (6 * kk - 3) * (6 * kk - 1) / ((2 * kk - 1) * 216.0 * kk);
    vk = -(6 * kk + 1) / (6 * kk - 1) * uk;
    power /= zeta;
    const double term = std::abs(uk * power) + std::abs(vk * power);
    if (term >= prev_term || term < 1e-17) break;
    prev_term = term;
    // k = 2m contributes (-1)^m to P, k = 2m + 1 contributes (-1)^m to Q.
    const int m = k / 2;
    const double sign = (m % 2) ? -1.0 : 1.0;
    if (k % 2 == 0) {
      pu += sign * uk * power;
      pv += sign * vk * power;
    } else {
      qu += sign * uk * power;
      qv += sign * vk * power;
    }
  }
  const double phase = zeta - 0.25 * std::numbers::pi;
  const double c = std::cos(phase), s = std::sin(phase);
  AiryValues v;
  v.ai = inv_sqrt_pi / quarter * (c * pu + s * qu);
  v.ai_prime = inv_sqrt_pi * quarter * (s * pv - c * qv);
  v.bi = inv_sqrt_pi / quarter * (-s * pu + c * qu);
  v.bi_prime = inv_sqrt_pi * quarter * (c * pv + s * qv);
  return v;
}

}  // namespace airy_detail

AiryValues airy(double x) {
  if (x >= airy_detail::kSeriesMin && x <= airy_detail::kSeriesMax) return airy_detail::series(x);
  return airy_detail::asymptotic(x);
}

double airy_ai(double x) { return airy(x).ai; }

double airy_ai_prime(double x) { return airy(x).ai_prime; }

double airy_integral(double x) {
  auto ai = [](double t) { return airy_ai(t); };
  // Ai(t) < 1e-19 for t > 14, so the integral past upper is negligible.
  if (x >= 0.0) {
    const double upper = x + 14.0;
    return integrate_panels(ai, x, upper);
  }
  return 1.0 / 3.0 + integrate_panels(ai, x, 0.0);
}

}  // namespace softedge
