#ifndef DYSTHE_RANDOM_FIELDS_HPP
#define DYSTHE_RANDOM_FIELDS_HPP

#include <cstdint>
#include <random>
#include <stdexcept>

#include "dysthe/dispersion.hpp"
#include "dysthe/norms.hpp"
#include "dysthe/spacetime_field.hpp"
#include "dysthe/spectral_field.hpp"

namespace dysthe {

struct RandomFieldSpec {
  int bandlimit = 4;
  double alpha = 0;        // coefficients scaled by <n>^{-alpha}
  std::int64_t spread = 0; // spacetime fields: max |tau - P(n)|
  int taus_per_mode = 1;   // spacetime fields: draws per spatial mode
  std::uint64_t seed = 0;
};

/// Counter-based seed derivation so that trial i is independent of scheduling.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// The master is hashed first so that neighbouring master seeds give unrelated trial streams.
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t counter) {
  return splitmix64(splitmix64(master) + counter);
}

inline void validate(const RandomFieldSpec& spec) {
  if (spec.bandlimit < 0) throw std::invalid_argument("bandlimit must be non-negative");
  if (spec.alpha < 0) throw std::invalid_argument("decay exponent must be non-negative");
  if (spec.spread < 0) throw std::invalid_argument("modulation spread must be non-negative");
  if (spec.taus_per_mode < 1) throw std::invalid_argument("taus_per_mode must be positive");
}

// Complex Gaussian draws are taken one component at a time through an explicit
// Box-Muller step; std::normal_distribution is implementation-defined.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0;
    while (u1 <= 0) u1 = unit();
    const double u2 = unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * 3.14159265358979323846 * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  std::complex<double> complex_normal() {
    const double re = normal();
    return {re, normal()};
  }

  /// Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(rng_() % span);
  }

  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 rng_;
  bool has_spare_ = false;
  double spare_ = 0;
};

inline SpectralField<double> random_spectral_field(const RandomFieldSpec& spec) {
  validate(spec);
  GaussianSource src(spec.seed);
  SpectralField<double> u(spec.bandlimit);
  for (int n = -spec.bandlimit; n <= spec.bandlimit; ++n)
    u[n] = src.complex_normal() * std::pow(bracket(static_cast<double>(n)), -spec.alpha);
  return u;
}

/// Coefficients at (n, P(n) + d) with d uniform in [-spread, spread].
inline SpaceTimeField<double> random_spacetime_field(const RandomFieldSpec& spec) {
  validate(spec);
  GaussianSource src(spec.seed);
  SpaceTimeField<double> f(spec.bandlimit);
  for (int n = -spec.bandlimit; n <= spec.bandlimit; ++n) {
    const double weight = std::pow(bracket(static_cast<double>(n)), -spec.alpha);
    const std::int64_t centre = to_int64(dispersion(n));
    for (int r = 0; r < spec.taus_per_mode; ++r) {
      const std::int64_t d = src.integer(-spec.spread, spec.spread);
      f.add(n, centre + d, src.complex_normal() * weight);
    }
  }
  return f;
}

/// One coefficient per (n, level) for every dyadic level 0..top, so that every
/// piece f_j with j <= top is non-empty.
inline SpaceTimeField<double> random_dyadic_field(int bandlimit, int top, std::uint64_t seed) {
  if (top < 0 || top > 40) throw std::invalid_argument("dyadic level out of range");
  GaussianSource src(seed);
  SpaceTimeField<double> f(bandlimit);
  for (int n = -bandlimit; n <= bandlimit; ++n) {
    const std::int64_t centre = to_int64(dispersion(n));
    for (int j = 0; j <= top; ++j) {
      // Offsets with level j are exactly 4^{j-1} <= d^2 < 4^j, i.e. 2^{j-1} <= |d| < 2^j (j >= 1).
      std::int64_t d = 0;
      if (j > 0) {
        const std::int64_t lo = std::int64_t{1} << (j - 1), hi = (std::int64_t{1} << j) - 1;
        d = src.integer(lo, hi);
        if (src.integer(0, 1) == 1) d = -d;
      }
      f.add(n, centre + d, src.complex_normal());
    }
  }
  return f;
}

}  // namespace dysthe

#endif  // DYSTHE_RANDOM_FIELDS_HPP
