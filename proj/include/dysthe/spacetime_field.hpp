#ifndef DYSTHE_SPACETIME_FIELD_HPP
#define DYSTHE_SPACETIME_FIELD_HPP

// Functions on the spacetime torus [0,2pi]_x x [0,2pi]_t,
//   f(x,t) = sum_{n,tau} c(n,tau) e^{i(nx + tau t)},
// stored as one contiguous temporal band per spatial mode. Spectra of interest hug
// the curve tau = P(n), so a band per n stays narrow even when P(n) is large.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "dysthe/dispersion.hpp"
#include "dysthe/fft.hpp"
#include "dysthe/spectral_field.hpp"

namespace dysthe {

template <typename Scalar = double>
class SpaceTimeField {
 public:
  using Complex = std::complex<Scalar>;
  using Band = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  struct Entry {
    std::int64_t n;
    std::int64_t tau;
    Complex value;
  };

  explicit SpaceTimeField(int spatial_bandlimit = 0)
      : bandlimit_(spatial_bandlimit), lo_(2 * spatial_bandlimit + 1, 0), bands_(2 * spatial_bandlimit + 1) {
    if (spatial_bandlimit < 0) throw std::invalid_argument("spatial bandlimit must be non-negative");
  }

  static SpaceTimeField from_entries(const std::vector<Entry>& entries) {
    std::int64_t limit = 0;
    for (const auto& e : entries) limit = std::max<std::int64_t>(limit, std::llabs(e.n));
    SpaceTimeField f(static_cast<int>(limit));
    for (const auto& e : entries) f.add(e.n, e.tau, e.value);
    return f;
  }

  int spatial_bandlimit() const { return bandlimit_; }

  /// Largest |tau| carried by any band (0 for an empty field).
  std::int64_t temporal_bandlimit() const {
    std::int64_t limit = 0;
    for (std::size_t i = 0; i < bands_.size(); ++i) {
      if (bands_[i].size() == 0) continue;
      limit = std::max({limit, std::llabs(lo_[i]), std::llabs(lo_[i] + bands_[i].size() - 1)});
    }
    return limit;
  }

  /// [min tau, max tau] over stored bands; {0,-1} when empty.
  std::pair<std::int64_t, std::int64_t> tau_range() const {
    std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = std::numeric_limits<std::int64_t>::min();
    for (std::size_t i = 0; i < bands_.size(); ++i) {
      if (bands_[i].size() == 0) continue;
      lo = std::min(lo, lo_[i]);
      hi = std::max<std::int64_t>(hi, lo_[i] + bands_[i].size() - 1);
    }
    if (lo > hi) return {0, -1};
    return {lo, hi};
  }

  /// [min n, max n] over non-empty bands; {0,-1} when empty.
  std::pair<std::int64_t, std::int64_t> mode_range() const {
    std::int64_t lo = 1, hi = 0;
    for (int n = -bandlimit_; n <= bandlimit_; ++n) {
      if (band(n).size() == 0) continue;
      if (lo > hi) lo = n;
      hi = n;
    }
    if (lo > hi) return {0, -1};
    return {lo, hi};
  }

  bool has_mode(std::int64_t n) const { return std::llabs(n) <= bandlimit_ && band(n).size() > 0; }

  const Band& band(std::int64_t n) const { return bands_.at(index(n)); }
  std::int64_t band_lo(std::int64_t n) const { return lo_.at(index(n)); }

  void set_band(std::int64_t n, std::int64_t tau_lo, Band values) {
    lo_.at(index(n)) = tau_lo;
    bands_.at(index(n)) = std::move(values);
  }

  Complex operator()(std::int64_t n, std::int64_t tau) const {
    if (std::llabs(n) > bandlimit_) return Complex(0);
    const auto i = index(n);
    const std::int64_t k = tau - lo_[i];
    if (k < 0 || k >= bands_[i].size()) return Complex(0);
    return bands_[i](k);
  }

  /// Adds value at (n, tau), growing the band of n to cover tau.
  void add(std::int64_t n, std::int64_t tau, Complex value) {
    const auto i = index(n);
    Band& b = bands_[i];
    if (b.size() == 0) {
      lo_[i] = tau;
      b = Band::Zero(1);
    } else if (tau < lo_[i] || tau >= lo_[i] + b.size()) {
      const std::int64_t new_lo = std::min(lo_[i], tau);
      const std::int64_t new_hi = std::max<std::int64_t>(lo_[i] + b.size() - 1, tau);
      Band grown = Band::Zero(new_hi - new_lo + 1);
      grown.segment(lo_[i] - new_lo, b.size()) = b;
      b = std::move(grown);
      lo_[i] = new_lo;
    }
    b(tau - lo_[i]) += value;
  }

  /// Visits every stored coefficient in (n, tau) order, zeros included.
  template <typename F>
  void for_each(F&& f) const {
    for (int n = -bandlimit_; n <= bandlimit_; ++n) {
      const auto i = index(n);
      for (Eigen::Index k = 0; k < bands_[i].size(); ++k) f(static_cast<std::int64_t>(n), lo_[i] + k, bands_[i](k));
    }
  }

  SpaceTimeField& operator*=(Complex s) {
    for (auto& b : bands_) b *= s;
    return *this;
  }

 private:
  std::size_t index(std::int64_t n) const {
    if (std::llabs(n) > bandlimit_) throw std::out_of_range("spatial mode " + std::to_string(n) + " outside bandlimit");
    return static_cast<std::size_t>(n + bandlimit_);
  }

  int bandlimit_;
  std::vector<std::int64_t> lo_;
  std::vector<Band> bands_;
};

/// Free evolution of u0 viewed on the spacetime torus: coefficient u0(n) at (n, P(n)).
template <typename Scalar>
SpaceTimeField<Scalar> linear_solution(const SpectralField<Scalar>& u0) {
  SpaceTimeField<Scalar> f(u0.bandlimit());
  u0.for_each([&](std::int64_t n, std::complex<Scalar> c) {
    if (c != std::complex<Scalar>(0)) f.add(n, to_int64(dispersion(n)), c);
  });
  return f;
}

template <typename Scalar>
SpaceTimeField<Scalar> operator+(const SpaceTimeField<Scalar>& a, const SpaceTimeField<Scalar>& b) {
  SpaceTimeField<Scalar> out(std::max(a.spatial_bandlimit(), b.spatial_bandlimit()));
  auto add_all = [&](const SpaceTimeField<Scalar>& src) {
    for (int n = -src.spatial_bandlimit(); n <= src.spatial_bandlimit(); ++n) {
      const auto& band = src.band(n);
      if (band.size() == 0) continue;
      // Grow once to the union range, then add the whole band.
      out.add(n, src.band_lo(n), 0);
      out.add(n, src.band_lo(n) + band.size() - 1, 0);
      const std::int64_t offset = src.band_lo(n) - out.band_lo(n);
      typename SpaceTimeField<Scalar>::Band merged = out.band(n);
      merged.segment(offset, band.size()) += band;
      out.set_band(n, out.band_lo(n), std::move(merged));
    }
  };
  add_all(a);
  add_all(b);
  return out;
}

/// Coefficients of the conjugate function: (n, tau) -> conj(c(-n, -tau)).
template <typename Scalar>
SpaceTimeField<Scalar> conjugate(const SpaceTimeField<Scalar>& f) {
  SpaceTimeField<Scalar> out(f.spatial_bandlimit());
  for (int n = -f.spatial_bandlimit(); n <= f.spatial_bandlimit(); ++n) {
    const auto& band = f.band(n);
    if (band.size() == 0) continue;
    out.set_band(-n, -(f.band_lo(n) + band.size() - 1), band.reverse().conjugate());
  }
  return out;
}

/// Removes the x-mean (the n = 0 band).
template <typename Scalar>
SpaceTimeField<Scalar> project_zero_mean(SpaceTimeField<Scalar> f) {
  f.set_band(0, 0, typename SpaceTimeField<Scalar>::Band());
  return f;
}

/// Keeps coefficients where keep(n, tau) holds; bands are trimmed to their nonzero span.
template <typename Scalar, typename Predicate>
SpaceTimeField<Scalar> restrict_support(const SpaceTimeField<Scalar>& f, Predicate&& keep) {
  SpaceTimeField<Scalar> out(f.spatial_bandlimit());
  for (int n = -f.spatial_bandlimit(); n <= f.spatial_bandlimit(); ++n) {
    const auto& band = f.band(n);
    Eigen::Index first = -1, last = -1;
    for (Eigen::Index k = 0; k < band.size(); ++k) {
      if (band(k) != std::complex<Scalar>(0) && keep(static_cast<std::int64_t>(n), f.band_lo(n) + k)) {
        if (first < 0) first = k;
        last = k;
      }
    }
    if (first < 0) continue;
    typename SpaceTimeField<Scalar>::Band kept = band.segment(first, last - first + 1);
    for (Eigen::Index k = first; k <= last; ++k)
      if (!keep(static_cast<std::int64_t>(n), f.band_lo(n) + k)) kept(k - first) = 0;
    out.set_band(n, f.band_lo(n) + first, std::move(kept));
  }
  return out;
}

/// Product of two spacetime functions: 2D convolution carried out band by band.
template <typename Scalar>
SpaceTimeField<Scalar> multiply(const SpaceTimeField<Scalar>& f, const SpaceTimeField<Scalar>& g) {
  using Band = typename SpaceTimeField<Scalar>::Band;
  const int nf = f.spatial_bandlimit(), ng = g.spatial_bandlimit();
  const int limit = nf + ng;
  std::vector<std::int64_t> lo(2 * limit + 1, std::numeric_limits<std::int64_t>::max());
  std::vector<std::int64_t> hi(2 * limit + 1, std::numeric_limits<std::int64_t>::min());
  for (int a = -nf; a <= nf; ++a) {
    if (f.band(a).size() == 0) continue;
    for (int b = -ng; b <= ng; ++b) {
      if (g.band(b).size() == 0) continue;
      const auto i = static_cast<std::size_t>(a + b + limit);
      lo[i] = std::min(lo[i], f.band_lo(a) + g.band_lo(b));
      hi[i] = std::max<std::int64_t>(hi[i], f.band_lo(a) + f.band(a).size() - 1 + g.band_lo(b) + g.band(b).size() - 1);
    }
  }
  std::vector<Band> acc(2 * limit + 1);
  for (std::size_t i = 0; i < acc.size(); ++i)
    if (lo[i] <= hi[i]) acc[i] = Band::Zero(hi[i] - lo[i] + 1);
  for (int a = -nf; a <= nf; ++a) {
    const Band& fa = f.band(a);
    if (fa.size() == 0) continue;
    for (int b = -ng; b <= ng; ++b) {
      const Band& gb = g.band(b);
      if (gb.size() == 0) continue;
      const auto i = static_cast<std::size_t>(a + b + limit);
      const std::int64_t offset = f.band_lo(a) + g.band_lo(b) - lo[i];
      for (Eigen::Index k = 0; k < fa.size(); ++k) {
        if (fa(k) == std::complex<Scalar>(0)) continue;
        acc[i].segment(offset + k, gb.size()) += fa(k) * gb;
      }
    }
  }
  SpaceTimeField<Scalar> out(limit);
  for (int n = -limit; n <= limit; ++n) {
    const auto i = static_cast<std::size_t>(n + limit);
    if (acc[i].size() > 0) out.set_band(n, lo[i], std::move(acc[i]));
  }
  return out;
}

/// Spatial coefficients at time t: c_n(t) = sum_tau c(n,tau) e^{i tau t}.
template <typename Scalar>
SpectralField<Scalar> time_slice(const SpaceTimeField<Scalar>& f, Scalar t) {
  SpectralField<Scalar> out(f.spatial_bandlimit());
  for (int n = -f.spatial_bandlimit(); n <= f.spatial_bandlimit(); ++n) {
    const auto& band = f.band(n);
    std::complex<Scalar> acc(0);
    for (Eigen::Index k = 0; k < band.size(); ++k)
      acc += band(k) * std::polar(Scalar(1), static_cast<Scalar>(f.band_lo(n) + k) * t);
    out[n] = acc;
  }
  return out;
}

/// Multiplies f by a time profile w(t) on the periodic interval [-pi, pi).
///
/// Per spatial mode the band is sampled on an equispaced time grid, multiplied by w,
/// and transformed back. `guard` extra frequencies are kept on each side of the band;
/// the spectrum of w beyond `guard` is aliased back and must be negligible.
template <typename Scalar>
SpaceTimeField<Scalar> apply_time_window(const SpaceTimeField<Scalar>& f, const std::function<Scalar(Scalar)>& window,
                                         std::int64_t guard) {
  using Complex = std::complex<Scalar>;
  if (guard < 0) throw std::invalid_argument("guard must be non-negative");
  std::int64_t width = 0;
  for (int n = -f.spatial_bandlimit(); n <= f.spatial_bandlimit(); ++n)
    width = std::max<std::int64_t>(width, f.band(n).size());
  const std::int64_t grid = good_fft_size(width + 2 * guard + 1);
  const Scalar pi = Scalar(3.14159265358979323846264338327950288L);
  std::vector<Scalar> samples(static_cast<std::size_t>(grid));
  for (std::int64_t l = 0; l < grid; ++l) {
    Scalar t = Scalar(2) * pi * static_cast<Scalar>(l) / static_cast<Scalar>(grid);
    if (t >= pi) t -= Scalar(2) * pi;
    samples[l] = window(t);
  }
  FourierEngine<Scalar> engine;
  SpaceTimeField<Scalar> out(f.spatial_bandlimit());
  std::vector<Complex> spectrum(static_cast<std::size_t>(grid)), values;
  for (int n = -f.spatial_bandlimit(); n <= f.spatial_bandlimit(); ++n) {
    const auto& band = f.band(n);
    if (band.size() == 0) continue;
    // Frequencies are measured from lo - guard so the output band is [lo - guard, lo - guard + grid).
    std::fill(spectrum.begin(), spectrum.end(), Complex(0));
    for (Eigen::Index k = 0; k < band.size(); ++k) spectrum[static_cast<std::size_t>(k + guard)] = band(k);
    engine.synthesize(values, spectrum);
    // The shift by lo - guard is a unimodular factor e^{i(lo-guard)t}; it commutes with w.
    for (std::int64_t l = 0; l < grid; ++l) values[l] *= samples[l];
    engine.analyze(spectrum, values);
    typename SpaceTimeField<Scalar>::Band result = Eigen::Map<typename SpaceTimeField<Scalar>::Band>(spectrum.data(), grid);
    out.set_band(n, f.band_lo(n) - guard, std::move(result));
  }
  return out;
}

/// sum_{n,tau} |c(n,tau)|^2
template <typename Scalar>
Scalar coefficient_energy(const SpaceTimeField<Scalar>& f) {
  Scalar acc(0);
  for (int n = -f.spatial_bandlimit(); n <= f.spatial_bandlimit(); ++n) acc += f.band(n).squaredNorm();
  return acc;
}

}  // namespace dysthe

#endif  // DYSTHE_SPACETIME_FIELD_HPP
