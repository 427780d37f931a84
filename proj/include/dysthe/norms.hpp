#ifndef DYSTHE_NORMS_HPP
#define DYSTHE_NORMS_HPP

// Sobolev, spacetime Lebesgue and Bourgain norms.
//
// Bourgain norms with weights <n>^s and sigma^b, sigma = <tau - P(n)>:
//   X^{s,b}: l^2_{n,tau}
//   Y^{s,b}: l^2_n l^1_tau
//   Z^{s,b}: X^{s,b} + Y^{s,b-1/2}   (sum of the two constituent norms)
// Bourgain norms act on raw coefficients; L^p norms carry the Lebesgue measure of
// [0,2pi]^2, so ||f||_{L^2} = 2pi ||c||_{l^2}.

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dysthe/dispersion.hpp"
#include "dysthe/fft.hpp"
#include "dysthe/spacetime_field.hpp"
#include "dysthe/spectral_field.hpp"
#include "dysthe/summation.hpp"

namespace dysthe {

inline constexpr long double kPi = 3.14159265358979323846264338327950288L;

struct NormReport {
  std::string name;
  double s = 0;
  double b = 0;
  double p = 0;
  double value = 0;
};

/// (sum_n <n>^{2s} |c_n|^2)^{1/2}
template <typename Scalar>
Scalar sobolev_norm(const SpectralField<Scalar>& u, Scalar s) {
  CompensatedSum<Scalar> acc;
  u.for_each([&](std::int64_t n, std::complex<Scalar> c) {
    if (c != std::complex<Scalar>(0)) acc.add(std::pow(bracket(static_cast<Scalar>(n)), 2 * s) * std::norm(c));
  });
  return std::sqrt(acc.value());
}

/// Parseval: ||f||_{L^2([0,2pi]^2)} = 2pi (sum |c|^2)^{1/2}.
template <typename Scalar>
Scalar l2_norm(const SpaceTimeField<Scalar>& f) {
  return Scalar(2) * static_cast<Scalar>(kPi) * std::sqrt(coefficient_energy(f));
}

struct QuadratureGrid {
  std::int64_t space = 1;
  std::int64_t time = 1;
};

/// Smallest equispaced grid on which the trapezoidal rule integrates |f|^p exactly.
///
/// |f|^p = (f conj f)^{p/2} has frequencies within +-p*D/2 per axis, D the width of
/// the support (|f| is blind to a common modulation), so M = floor(p*D/2) + 1 suffices.
template <typename Scalar>
QuadratureGrid minimal_quadrature_grid(const SpaceTimeField<Scalar>& f, int p) {
  if (p < 2 || p % 2 != 0) throw std::invalid_argument("exact quadrature needs an even exponent p >= 2");
  const auto [nlo, nhi] = f.mode_range();
  const auto [tlo, thi] = f.tau_range();
  QuadratureGrid g;
  g.space = (nlo > nhi) ? 1 : (static_cast<std::int64_t>(p) * (nhi - nlo)) / 2 + 1;
  g.time = (tlo > thi) ? 1 : (static_cast<std::int64_t>(p) * (thi - tlo)) / 2 + 1;
  return g;
}

/// (int_{[0,2pi]^2} |f|^p dx dt)^{1/p} by equal-weight quadrature on a given grid.
template <typename Scalar>
Scalar lp_norm(const SpaceTimeField<Scalar>& f, int p, QuadratureGrid grid) {
  using Complex = std::complex<Scalar>;
  const QuadratureGrid need = minimal_quadrature_grid(f, p);
  if (grid.space < need.space || grid.time < need.time)
    throw std::invalid_argument("quadrature grid " + std::to_string(grid.space) + "x" + std::to_string(grid.time) +
                                " too small for exact L^" + std::to_string(p) + "; need M_x >= " +
                                std::to_string(need.space) + " and M_t >= " + std::to_string(need.time));
  const auto [nlo, nhi] = f.mode_range();
  if (nlo > nhi) return Scalar(0);
  const auto [tlo, thi] = f.tau_range();
  const std::int64_t modes = nhi - nlo + 1;

  // Temporal synthesis per spatial mode; frequencies are shifted by tlo and nlo,
  // which only multiplies f by a unimodular factor.
  FourierEngine<Scalar> engine;
  std::vector<std::vector<Complex>> columns(static_cast<std::size_t>(modes));
  std::vector<Complex> spectrum(static_cast<std::size_t>(grid.time));
  for (std::int64_t n = nlo; n <= nhi; ++n) {
    const auto& band = f.band(n);
    if (band.size() == 0) continue;
    std::fill(spectrum.begin(), spectrum.end(), Complex(0));
    for (Eigen::Index k = 0; k < band.size(); ++k) spectrum[f.band_lo(n) - tlo + k] = band(k);
    engine.synthesize(columns[n - nlo], spectrum);
  }
  std::vector<Complex> row(static_cast<std::size_t>(grid.space)), values;
  CompensatedSum<Scalar> acc;
  for (std::int64_t l = 0; l < grid.time; ++l) {
    std::fill(row.begin(), row.end(), Complex(0));
    for (std::int64_t i = 0; i < modes; ++i)
      if (!columns[i].empty()) row[i] = columns[i][l];
    engine.synthesize(values, row);
    Scalar slice(0);
    for (const auto& v : values) {
      const Scalar m2 = std::norm(v);
      Scalar power(1);
      for (int k = 0; k < p / 2; ++k) power *= m2;
      slice += power;
    }
    acc.add(slice);
  }
  const Scalar cell = Scalar(4) * static_cast<Scalar>(kPi * kPi) /
                      (static_cast<Scalar>(grid.space) * static_cast<Scalar>(grid.time));
  return std::pow(acc.value() * cell, Scalar(1) / static_cast<Scalar>(p));
}

/// L^p norm on the smallest FFT-friendly exact grid.
template <typename Scalar>
Scalar lp_norm(const SpaceTimeField<Scalar>& f, int p) {
  const QuadratureGrid need = minimal_quadrature_grid(f, p);
  return lp_norm(f, p, QuadratureGrid{good_fft_size(need.space), good_fft_size(need.time)});
}

template <typename Scalar>
Scalar xsb_norm(const SpaceTimeField<Scalar>& f, Scalar s, Scalar b) {
  CompensatedSum<Scalar> acc;
  f.for_each([&](std::int64_t n, std::int64_t tau, std::complex<Scalar> c) {
    if (c == std::complex<Scalar>(0)) return;
    acc.add(std::pow(bracket(static_cast<Scalar>(n)), 2 * s) * std::pow(modulation<Scalar>(n, tau), 2 * b) * std::norm(c));
  });
  return std::sqrt(acc.value());
}

template <typename Scalar>
Scalar ysb_norm(const SpaceTimeField<Scalar>& f, Scalar s, Scalar b) {
  CompensatedSum<Scalar> outer;
  for (int n = -f.spatial_bandlimit(); n <= f.spatial_bandlimit(); ++n) {
    const auto& band = f.band(n);
    if (band.size() == 0) continue;
    CompensatedSum<Scalar> inner_sum;
    for (Eigen::Index k = 0; k < band.size(); ++k) {
      if (band(k) == std::complex<Scalar>(0)) continue;
      inner_sum.add(std::pow(modulation<Scalar>(n, f.band_lo(n) + k), b) * std::abs(band(k)));
    }
    const Scalar weighted = std::pow(bracket(static_cast<Scalar>(n)), s) * inner_sum.value();
    outer.add(weighted * weighted);
  }
  return std::sqrt(outer.value());
}

template <typename Scalar>
Scalar zsb_norm(const SpaceTimeField<Scalar>& f, Scalar s, Scalar b) {
  return xsb_norm(f, s, b) + ysb_norm(f, s, b - Scalar(0.5));
}

/// Dyadic level of a modulation offset d = tau - P(n): the j >= 0 with
/// 2^{j-1} < <d> <= 2^j, decided in exact integers via 1 + d^2 <= 4^j.
inline int dyadic_level(std::int64_t offset) {
  const wide_int target = checked_add(1, checked_mul(offset, offset));
  int j = 0;
  wide_int bound = 1;
  while (bound < target) {
    bound *= 4;
    ++j;
  }
  return j;
}

/// f restricted to 2^{j-1} < sigma <= 2^j.
template <typename Scalar>
SpaceTimeField<Scalar> dyadic_piece(const SpaceTimeField<Scalar>& f, int level) {
  return restrict_support(f, [level](std::int64_t n, std::int64_t tau) {
    return dyadic_level(modulation_offset(n, tau)) == level;
  });
}

/// Highest dyadic level present in f (-1 for an empty field).
template <typename Scalar>
int max_dyadic_level(const SpaceTimeField<Scalar>& f) {
  int top = -1;
  f.for_each([&](std::int64_t n, std::int64_t tau, std::complex<Scalar> c) {
    if (c != std::complex<Scalar>(0)) top = std::max(top, dyadic_level(modulation_offset(n, tau)));
  });
  return top;
}

/// (sum_{tau in Z} <tau>^{-1-2 delta})^{1/2}, the constant in ||f||_{Y^{s,b-1/2}} <= C ||f||_{X^{s,b+delta}}.
/// Summed to |tau| <= K with an integral tail bound added.
inline double modulation_sum_constant(double delta) {
  if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
  const double exponent = 1.0 + 2.0 * delta;
  const std::int64_t cutoff = 1 << 20;
  CompensatedSum<double> acc;
  for (std::int64_t tau = cutoff; tau >= 1; --tau) acc.add(2.0 * std::pow(bracket(static_cast<double>(tau)), -exponent));
  acc.add(1.0);
  // Tail: 2 * int_{K+1/2}^inf x^{-exponent} dx (midpoint estimate, <x> ~ x there).
  acc.add(2.0 * std::pow(cutoff + 0.5, 1.0 - exponent) / (exponent - 1.0));
  return std::sqrt(acc.value());
}

}  // namespace dysthe

#endif  // DYSTHE_NORMS_HPP
