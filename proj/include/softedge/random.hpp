#pragma once

#include <cstdint>
#include <limits>

namespace softedge {

/// SplitMix64 finalizer. Used to derive independent stream keys.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/**
 * Per-sample random stream (xoshiro256++ core).
 *
 * A stream is keyed by (seed, index): sample i of a run always sees the same
 * variates no matter which worker draws it or in what order. Satisfies
 * UniformRandomBitGenerator so it can also drive <random> distributions.
 */
class SampleStream {
 public:
  using result_type = std::uint64_t;

  SampleStream(std::uint64_t seed, std::uint64_t index) noexcept;
  explicit SampleStream(std::uint64_t seed) noexcept : SampleStream(seed, 0) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Uniform on the open interval (0, 1); 53 random bits.
  double uniform() noexcept;

  /// Standard normal variate (Marsaglia polar method, spare cached).
  double gaussian() noexcept;

 private:
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// N(0, 1) variate.
double sample_gaussian(SampleStream& rng);

/// Gamma(shape, 1) variate; Marsaglia-Tsang squeeze with shape boosting for shape < 1.
/// Throws std::domain_error unless shape > 0.
double sample_gamma(double shape, SampleStream& rng);

/// Chi variate with `dof` degrees of freedom (any real dof > 0): sqrt(2 * Gamma(dof / 2)).
/// Throws std::domain_error unless dof > 0.
double sample_chi(double dof, SampleStream& rng);

}  // namespace softedge
