#include "softedge/random.hpp"

#include <cmath>
#include <stdexcept>

namespace softedge {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

SampleStream::SampleStream(std::uint64_t seed, std::uint64_t index) noexcept {
  // Two rounds of mixing keep nearby (seed, index) pairs far apart.
  std::uint64_t key = mix64(seed) ^ mix64(index ^ 0x6a09e667f3bcc909ULL);
  for (auto& word : s_) {
    key += 0x9e3779b97f4a7c15ULL;
    word = mix64(key);
  }
}

SampleStream::result_type SampleStream::operator()() noexcept {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double SampleStream::uniform() noexcept {
  // (k + 0.5) / 2^53 never hits 0 or 1.
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

double SampleStream::gaussian() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * factor;
  has_spare_ = true;
  return u * factor;
}

double sample_gaussian(SampleStream& rng) { return rng.gaussian(); }

double sample_gamma(double shape, SampleStream& rng) {
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    throw std::domain_error("sample_gamma: shape must be a positive finite number");
  }
  if (shape < 1.0) {
    // G(a) = G(a + 1) * U^(1/a)
    const double boosted = sample_gamma(shape + 1.0, rng);
    return boosted * std::pow(rng.uniform(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.gaussian();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double sample_chi(double dof, SampleStream& rng) {
  if (!(dof > 0.0) || !std::isfinite(dof)) {
    throw std::domain_error("sample_chi: degrees of freedom must be positive");
  }
  return std::sqrt(2.0 * sample_gamma(0.5 * dof, rng));
}

}  // namespace softedge
