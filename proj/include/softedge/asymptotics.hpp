#pragma once

#include <string>
#include <string_view>

namespace softedge {

/// zeta'(-1) = 1/12 - ln(Glaisher constant).
inline constexpr double kZetaPrimeMinusOne = -0.16542114370045092921;

/// Published quartic coefficient of the small-gap expansion p~ = r^2/2 + a4 r^4 at beta = 2.
inline constexpr double kGapQuarticCoefficient = -0.393575;

/**
 * zeta'(-1) recomputed from (1 - gamma - ln 2pi)/12 + zeta'(2)/(2 pi^2), with
 * zeta'(2) = -sum ln n / n^2 summed directly and closed by Euler-Maclaurin.
 */
double zeta_prime_minus_one();

/// A = 2^{-91/48} e^{zeta'(-1)} / sqrt(pi), amplitude of the beta = 2 gap tail.
double gap_tail_amplitude();

enum class AsymptoteKind {
  edge_density_left,   // sqrt(-x)/pi, every beta
  edge_density_right,  // exp(-(2 beta/3) x^{3/2}), leading factor only
  dos_small,           // a_beta r^beta, amplitude known for beta = 2 only
  dos_large,           // sqrt(r)/pi, every beta
  gap_small,           // r^2/2 + a4 r^4, beta = 2 only
  gap_large_leading,   // exp(-(2 beta/3) r^{3/2})
  gap_large_full,      // beta = 2 tail with amplitude, stretched exponent and correction
};

/// Parses "edge-density-left", "gap-large-full", ...; throws std::invalid_argument.
AsymptoteKind parse_asymptote_kind(std::string_view name);
std::string to_string(AsymptoteKind kind);

/**
 * Evaluates the asymptotic expression `kind` at `argument`.
 * Throws std::invalid_argument for beta values without a closed-form amplitude
 * (for those only the exponent beta of the small-r onset is predicted).
 */
double asymptote(AsymptoteKind kind, double beta, double argument);

}  // namespace softedge
