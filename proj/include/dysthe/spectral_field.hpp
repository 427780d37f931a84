#ifndef DYSTHE_SPECTRAL_FIELD_HPP
#define DYSTHE_SPECTRAL_FIELD_HPP

// Band-limited functions on the spatial torus.
//
// Convention (shared by every module): u(x) = sum_n c_n e^{inx} with no 1/2pi in
// synthesis, so ||u||^2_{L^2[0,2pi]} = 2pi sum_n |c_n|^2.

#include <complex>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "dysthe/dispersion.hpp"
#include "dysthe/fft.hpp"

namespace dysthe {

template <typename Scalar = double>
class SpectralField {
 public:
  using Complex = std::complex<Scalar>;
  using Coeffs = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  explicit SpectralField(int bandlimit = 0) : bandlimit_(checked_bandlimit(bandlimit)) {
    coeffs_ = Coeffs::Zero(2 * bandlimit_ + 1);
  }

  SpectralField(int bandlimit, Coeffs coeffs) : bandlimit_(checked_bandlimit(bandlimit)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != 2 * bandlimit_ + 1)
      throw std::invalid_argument("coefficient vector must have 2*bandlimit+1 entries");
  }

  static SpectralField delta(std::int64_t n, Complex value = Complex(1), int bandlimit = -1) {
    SpectralField u(bandlimit < 0 ? static_cast<int>(std::llabs(n)) : bandlimit);
    u[n] = value;
    return u;
  }

  static SpectralField constant(Complex value) { return delta(0, value); }

  /// Bandlimit is the largest |n| listed.
  static SpectralField from_modes(const std::vector<std::pair<std::int64_t, Complex>>& modes) {
    std::int64_t limit = 0;
    for (const auto& [n, c] : modes) limit = std::max<std::int64_t>(limit, std::llabs(n));
    SpectralField u(static_cast<int>(limit));
    for (const auto& [n, c] : modes) u[n] += c;
    return u;
  }

  int bandlimit() const { return bandlimit_; }

  /// Coefficient at mode n; zero outside the band.
  Complex operator()(std::int64_t n) const {
    return std::llabs(n) > bandlimit_ ? Complex(0) : coeffs_(n + bandlimit_);
  }

  Complex& operator[](std::int64_t n) {
    if (std::llabs(n) > bandlimit_)
      throw std::out_of_range("mode " + std::to_string(n) + " outside bandlimit " + std::to_string(bandlimit_));
    return coeffs_(n + bandlimit_);
  }

  const Coeffs& coeffs() const { return coeffs_; }
  Coeffs& coeffs() { return coeffs_; }

  template <typename F>
  void for_each(F&& f) const {
    for (int n = -bandlimit_; n <= bandlimit_; ++n) f(n, coeffs_(n + bandlimit_));
  }

  SpectralField& operator+=(const SpectralField& other) {
    if (other.bandlimit_ > bandlimit_) *this = truncated(other.bandlimit_);
    coeffs_.segment(bandlimit_ - other.bandlimit_, other.coeffs_.size()) += other.coeffs_;
    return *this;
  }

  SpectralField& operator*=(Complex s) {
    coeffs_ *= s;
    return *this;
  }

  /// S_N: keep |n| <= limit (or zero-extend when limit is larger).
  SpectralField truncated(int limit) const {
    SpectralField out(limit);
    const int common = std::min(limit, bandlimit_);
    out.coeffs_.segment(limit - common, 2 * common + 1) = coeffs_.segment(bandlimit_ - common, 2 * common + 1);
    return out;
  }

 private:
  static int checked_bandlimit(int bandlimit) {
    if (bandlimit < 0) throw std::invalid_argument("bandlimit must be non-negative");
    return bandlimit;
  }

  int bandlimit_;
  Coeffs coeffs_;
};

template <typename Scalar>
SpectralField<Scalar> operator+(SpectralField<Scalar> a, const SpectralField<Scalar>& b) {
  a += b;
  return a;
}

template <typename Scalar>
SpectralField<Scalar> operator-(SpectralField<Scalar> a, const SpectralField<Scalar>& b) {
  SpectralField<Scalar> neg = b;
  neg *= std::complex<Scalar>(-1);
  a += neg;
  return a;
}

template <typename Scalar>
SpectralField<Scalar> operator*(std::complex<Scalar> s, SpectralField<Scalar> u) {
  u *= s;
  return u;
}

/// e^{itL}: coefficient n picks up e^{i P(n) t}.
template <typename Scalar>
SpectralField<Scalar> propagate(const SpectralField<Scalar>& u, Scalar t) {
  SpectralField<Scalar> out(u.bandlimit());
  u.for_each([&](std::int64_t n, std::complex<Scalar> c) {
    out[n] = c * std::polar(Scalar(1), static_cast<Scalar>(dispersion(n)) * t);
  });
  return out;
}

enum class Multiplier { dx, abs_dx };

/// Multiply coefficient n by m(n) for an arbitrary symbol m.
template <typename Scalar, typename Symbol>
SpectralField<Scalar> apply_symbol(const SpectralField<Scalar>& u, Symbol&& symbol) {
  SpectralField<Scalar> out(u.bandlimit());
  u.for_each([&](std::int64_t n, std::complex<Scalar> c) { out[n] = std::complex<Scalar>(symbol(n)) * c; });
  return out;
}

template <typename Scalar>
SpectralField<Scalar> apply_multiplier(const SpectralField<Scalar>& u, Multiplier kind) {
  using Complex = std::complex<Scalar>;
  switch (kind) {
    case Multiplier::dx:
      return apply_symbol(u, [](std::int64_t n) { return Complex(0, static_cast<Scalar>(n)); });
    case Multiplier::abs_dx:
      return apply_symbol(u, [](std::int64_t n) { return Complex(static_cast<Scalar>(std::llabs(n))); });
  }
  throw std::invalid_argument("unknown multiplier");
}

/// Custom symbol given as a table. Every mode carrying a nonzero coefficient must be listed.
template <typename Scalar>
SpectralField<Scalar> apply_multiplier(const SpectralField<Scalar>& u,
                                       const std::map<std::int64_t, std::complex<Scalar>>& symbol) {
  SpectralField<Scalar> out(u.bandlimit());
  u.for_each([&](std::int64_t n, std::complex<Scalar> c) {
    if (c == std::complex<Scalar>(0)) return;
    const auto it = symbol.find(n);
    if (it == symbol.end()) throw std::invalid_argument("multiplier table has no entry for mode " + std::to_string(n));
    out[n] = it->second * c;
  });
  return out;
}

template <typename Scalar>
SpectralField<Scalar> dx(const SpectralField<Scalar>& u) {
  return apply_multiplier(u, Multiplier::dx);
}

template <typename Scalar>
SpectralField<Scalar> abs_dx(const SpectralField<Scalar>& u) {
  return apply_multiplier(u, Multiplier::abs_dx);
}

template <typename Scalar>
SpectralField<Scalar> project_zero_mean(SpectralField<Scalar> u) {
  u[0] = 0;
  return u;
}

/// Coefficients of the complex conjugate function: n -> conj(c_{-n}).
template <typename Scalar>
SpectralField<Scalar> conjugate(const SpectralField<Scalar>& u) {
  SpectralField<Scalar> out(u.bandlimit());
  out.coeffs() = u.coeffs().reverse().conjugate();
  return out;
}

/// Exact discrete convolution; bandlimit of the result is the sum of the bandlimits.
template <typename Scalar>
SpectralField<Scalar> multiply_exact(const SpectralField<Scalar>& u, const SpectralField<Scalar>& v) {
  const int nu = u.bandlimit(), nv = v.bandlimit();
  SpectralField<Scalar> out(nu + nv);
  auto& r = out.coeffs();
  const auto& a = u.coeffs();
  const auto& b = v.coeffs();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) == std::complex<Scalar>(0)) continue;
    r.segment(i, b.size()) += a(i) * b;
  }
  return out;
}

/// Synthesis on x_k = 2 pi k / M. Requires M >= 2*bandlimit+1.
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1> synthesize(const SpectralField<Scalar>& u, std::int64_t grid_size) {
  using Complex = std::complex<Scalar>;
  if (grid_size < 2 * static_cast<std::int64_t>(u.bandlimit()) + 1)
    throw std::invalid_argument("grid of " + std::to_string(grid_size) + " points cannot represent bandlimit " +
                                std::to_string(u.bandlimit()) + "; need at least " + std::to_string(2 * u.bandlimit() + 1));
  std::vector<Complex> spectrum(static_cast<std::size_t>(grid_size), Complex(0)), samples;
  u.for_each([&](std::int64_t n, Complex c) { spectrum[wrap_index(n, grid_size)] += c; });
  FourierEngine<Scalar> engine;
  engine.synthesize(samples, spectrum);
  return Eigen::Map<Eigen::Matrix<Complex, Eigen::Dynamic, 1>>(samples.data(), grid_size);
}

/// Inverse of synthesize for data band-limited to `bandlimit`.
template <typename Derived>
auto analyze(const Eigen::MatrixBase<Derived>& samples, int bandlimit) {
  using Complex = typename Derived::Scalar;
  using Scalar = typename Complex::value_type;
  const std::int64_t grid_size = samples.size();
  if (grid_size < 2 * static_cast<std::int64_t>(bandlimit) + 1)
    throw std::invalid_argument("grid of " + std::to_string(grid_size) + " points cannot resolve bandlimit " +
                                std::to_string(bandlimit));
  std::vector<Complex> in(samples.derived().data(), samples.derived().data() + grid_size), spectrum;
  FourierEngine<Scalar> engine;
  engine.analyze(spectrum, in);
  SpectralField<Scalar> u(bandlimit);
  for (std::int64_t n = -bandlimit; n <= bandlimit; ++n) u[n] = spectrum[wrap_index(n, grid_size)];
  return u;
}

/// Pointwise product on a zero-padded grid; agrees with multiply_exact up to rounding.
template <typename Scalar>
SpectralField<Scalar> multiply_on_grid(const SpectralField<Scalar>& u, const SpectralField<Scalar>& v) {
  const int limit = u.bandlimit() + v.bandlimit();
  const std::int64_t grid_size = good_fft_size(2 * static_cast<std::int64_t>(limit) + 1);
  auto product = synthesize(u, grid_size);
  product.array() *= synthesize(v, grid_size).array();
  return analyze(product, limit);
}

/// Exact convolution up to bandlimit 256, zero-padded grid product above.
template <typename Scalar>
SpectralField<Scalar> multiply(const SpectralField<Scalar>& u, const SpectralField<Scalar>& v) {
  constexpr int exact_limit = 256;
  if (u.bandlimit() <= exact_limit && v.bandlimit() <= exact_limit) return multiply_exact(u, v);
  return multiply_on_grid(u, v);
}

/// sum_n |c_n|^2
template <typename Scalar>
Scalar coefficient_energy(const SpectralField<Scalar>& u) {
  return u.coeffs().squaredNorm();
}

/// Normalised pairing <g, h> = sum_k g_k conj(h_k) = (1/2pi) int g conj(h) dx.
template <typename Scalar>
std::complex<Scalar> inner(const SpectralField<Scalar>& g, const SpectralField<Scalar>& h) {
  std::complex<Scalar> acc(0);
  const int limit = std::min(g.bandlimit(), h.bandlimit());
  for (int n = -limit; n <= limit; ++n) acc += g(n) * std::conj(h(n));
  return acc;
}

}  // namespace dysthe

#endif  // DYSTHE_SPECTRAL_FIELD_HPP
