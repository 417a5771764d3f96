#include "softedge/asymptotics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace softedge {

namespace {

constexpr std::array<std::pair<AsymptoteKind, std::string_view>, 7> kNames{{
    {AsymptoteKind::edge_density_left, "edge-density-left"},
    {AsymptoteKind::edge_density_right, "edge-density-right"},
    {AsymptoteKind::dos_small, "dos-small"},
    {AsymptoteKind::dos_large, "dos-large"},
    {AsymptoteKind::gap_small, "gap-small"},
    {AsymptoteKind::gap_large_leading, "gap-large-leading"},
    {AsymptoteKind::gap_large_full, "gap-large-full"},
}};

[[noreturn]] void amplitude_unknown(AsymptoteKind kind, double beta) {
  std::ostringstream msg;
  msg << to_string(kind) << ": no amplitude for beta = " << beta
      << "; only the small-r exponent beta is predicted (amplitude known at beta = 2)";
  throw std::invalid_argument(msg.str());
}

}  // namespace

double zeta_prime_minus_one() {
  // zeta'(2) = -sum_{n>=1} ln n / n^2; head summed to M - 1, tail by Euler-Maclaurin.
  constexpr int kM = 200;
  long double head = 0.0L;
  for (int n = 2; n < kM; ++n) head += std::log(static_cast<long double>(n)) / (1.0L * n * n);
  const long double m = kM, lm = std::log(m);
  const long double f = lm / (m * m);
  const long double f1 = (1.0L - 2.0L * lm) / (m * m * m);
  const long double f3 = (26.0L - 24.0L * lm) / (m * m * m * m * m);
  const long double tail = (lm + 1.0L) / m + 0.5L * f - f1 / 12.0L + f3 / 720.0L;
  const long double zeta2_prime = -(head + tail);
  const long double pi = std::numbers::pi_v<long double>;
  const long double gamma = std::numbers::egamma_v<long double>;
  const long double value =
      (1.0L - gamma - std::log(2.0L * pi)) / 12.0L + zeta2_prime / (2.0L * pi * pi);
  return static_cast<double>(value);
}

double gap_tail_amplitude() {
  return std::pow(2.0, -91.0 / 48.0) * std::exp(kZetaPrimeMinusOne) / std::sqrt(std::numbers::pi);
}

AsymptoteKind parse_asymptote_kind(std::string_view name) {
  for (const auto& [kind, text] : kNames) {
    if (text == name) return kind;
  }
  throw std::invalid_argument("unknown asymptote kind: " + std::string(name));
}

std::string to_string(AsymptoteKind kind) {
  for (const auto& [k, text] : kNames) {
    if (k == kind) return std::string(text);
  }
  return "unknown";
}

double asymptote(AsymptoteKind kind, double beta, double r) {
  if (!(beta > 0.0)) throw std::invalid_argument("asymptote: beta must be positive");
  switch (kind) {
    case AsymptoteKind::edge_density_left:
      return std::sqrt(std::max(0.0, -r)) / std::numbers::pi;
    case AsymptoteKind::edge_density_right:
      return std::exp(-2.0 * beta / 3.0 * std::pow(std::max(0.0, r), 1.5));
    case AsymptoteKind::dos_small:
      if (beta != 2.0) amplitude_unknown(kind, beta);
      return 0.5 * r * r;
    case AsymptoteKind::dos_large:
      return std::sqrt(std::max(0.0, r)) / std::numbers::pi;
    case AsymptoteKind::gap_small:
      if (beta != 2.0) amplitude_unknown(kind, beta);
      return 0.5 * r * r + kGapQuarticCoefficient * r * r * r * r;
    case AsymptoteKind::gap_large_leading:
      return std::exp(-2.0 * beta / 3.0 * std::pow(std::max(0.0, r), 1.5));
    case AsymptoteKind::gap_large_full: {
      if (beta != 2.0) amplitude_unknown(kind, beta);
      if (!(r > 0.0)) throw std::domain_error("gap-large-full: argument must be positive");
      const double r34 = std::pow(r, 0.75);
      const double exponent =
          -4.0 / 3.0 * r * std::sqrt(r) + 8.0 / 3.0 * std::numbers::sqrt2 * r34;
      const double correction = 1.0 - 1405.0 * std::numbers::sqrt2 / 1536.0 / r34;
      return gap_tail_amplitude() * std::exp(exponent) * std::pow(r, -21.0 / 32.0) * correction;
    }
  }
  throw std::invalid_argument("asymptote: unknown kind");
}

}  // namespace softedge
