#ifndef DYSTHE_DYNAMICS_HPP
#define DYSTHE_DYNAMICS_HPP

// Nonlinearity, third Picard iterate, viscous solver and the energy functional.
//
// The nonlinearity is
//   N(u) = -(i/2)|u|^2 u - (3/2)|u|^2 u_x - (1/4) u^2 (conj u)_x + (i/2) u |d_x| |u|^2
// and the third Picard iterate is u_3(t) = int_0^t e^{i(t-s)L} N(e^{isL} u_0) ds.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "dysthe/dispersion.hpp"
#include "dysthe/norms.hpp"
#include "dysthe/quadrature.hpp"
#include "dysthe/spectral_field.hpp"

namespace dysthe {

enum class Channel { cubic, transport, conj_transport, nonlocal };

inline constexpr Channel kChannels[] = {Channel::cubic, Channel::transport, Channel::conj_transport, Channel::nonlocal};

std::string to_string(Channel channel);

/// The four terms of N(u), each already carrying its coefficient.
template <typename Scalar>
struct NonlinearTerms {
  SpectralField<Scalar> cubic, transport, conj_transport, nonlocal;

  SpectralField<Scalar>& operator[](Channel c) {
    switch (c) {
      case Channel::cubic: return cubic;
      case Channel::transport: return transport;
      case Channel::conj_transport: return conj_transport;
      default: return nonlocal;
    }
  }
  const SpectralField<Scalar>& operator[](Channel c) const { return const_cast<NonlinearTerms&>(*this)[c]; }

  SpectralField<Scalar> derivative_terms() const { return transport + conj_transport + nonlocal; }
  SpectralField<Scalar> total() const { return cubic + derivative_terms(); }
};

template <typename Scalar>
NonlinearTerms<Scalar> nonlinearity_terms(const SpectralField<Scalar>& u) {
  using Complex = std::complex<Scalar>;
  const Complex i(0, 1);
  const auto ubar = conjugate(u);
  const auto mod2 = multiply(u, ubar);
  NonlinearTerms<Scalar> t;
  t.cubic = (-i / Scalar(2)) * multiply(mod2, u);
  t.transport = Complex(Scalar(-1.5)) * multiply(mod2, dx(u));
  t.conj_transport = Complex(Scalar(-0.25)) * multiply(multiply(u, u), dx(ubar));
  t.nonlocal = (i / Scalar(2)) * multiply(u, abs_dx(mod2));
  return t;
}

template <typename Scalar>
SpectralField<Scalar> nonlinearity(const SpectralField<Scalar>& u) {
  return nonlinearity_terms(u).total();
}

/// (e^{-i Omega t} - 1) / (-i Omega), equal to t at Omega = 0.
///
/// Written as t e^{-ix/2} sin(x/2)/(x/2), x = Omega t, which has no cancellation near 0.
template <typename Scalar>
std::complex<Scalar> picard_kernel(wide_int omega, Scalar t) {
  if (omega == 0) return std::complex<Scalar>(t);
  const Scalar half = static_cast<Scalar>(omega) * t / Scalar(2);
  const Scalar sinc = std::abs(half) < Scalar(1e-4) ? Scalar(1) - half * half / Scalar(6) : std::sin(half) / half;
  return t * sinc * std::polar(Scalar(1), -half);
}

/// One term of u_3 at output mode n = n1 + n2 - n3, from u0(n1) u0(n2) conj(u0(n3)).
template <typename Scalar>
struct PicardInteraction {
  std::int64_t n = 0, n1 = 0, n2 = 0, n3 = 0;
  Channel channel = Channel::cubic;
  wide_int omega = 0;  // P(n) - P(n1) - P(n2) + P(n3)
  std::complex<Scalar> weight;
  std::complex<Scalar> kernel;
};

/// Channel multiplier for the ordered triple: n2 is the differentiated factor of u_x,
/// n3 the conjugated one; |d_x| acts on the |u|^2 pair (n2, n3).
template <typename Scalar>
std::complex<Scalar> channel_weight(Channel channel, std::int64_t n2, std::int64_t n3) {
  const std::complex<Scalar> i(0, 1);
  switch (channel) {
    case Channel::cubic: return -i / Scalar(2);
    case Channel::transport: return Scalar(-1.5) * i * static_cast<Scalar>(n2);
    case Channel::conj_transport: return Scalar(0.25) * i * static_cast<Scalar>(n3);
    default: return i / Scalar(2) * static_cast<Scalar>(std::llabs(n2 - n3));
  }
}

/// Visits every nonzero-weight interaction between support modes of u0.
template <typename Scalar, typename Visitor>
void for_each_interaction(const SpectralField<Scalar>& u0, Scalar t, Visitor&& visit) {
  std::vector<std::int64_t> support;
  u0.for_each([&](std::int64_t n, std::complex<Scalar> c) {
    if (c != std::complex<Scalar>(0)) support.push_back(n);
  });
  for (auto a : support)
    for (auto b : support)
      for (auto c : support) {
        PicardInteraction<Scalar> it;
        it.n = a + b - c;
        it.n1 = a;
        it.n2 = b;
        it.n3 = c;
        it.omega = dispersion(it.n) - dispersion(a) - dispersion(b) + dispersion(c);
        it.kernel = picard_kernel<Scalar>(it.omega, t);
        for (Channel ch : kChannels) {
          it.channel = ch;
          it.weight = channel_weight<Scalar>(ch, b, c);
          if (it.weight != std::complex<Scalar>(0)) visit(it);
        }
      }
}

/// u_3(t) by the exact oscillatory sum, channel by channel.
template <typename Scalar>
NonlinearTerms<Scalar> third_picard_exact(const SpectralField<Scalar>& u0, Scalar t) {
  const int limit = 3 * u0.bandlimit();
  NonlinearTerms<Scalar> out{SpectralField<Scalar>(limit), SpectralField<Scalar>(limit), SpectralField<Scalar>(limit),
                             SpectralField<Scalar>(limit)};
  for_each_interaction(u0, t, [&](const PicardInteraction<Scalar>& it) {
    out[it.channel][it.n] += it.weight * u0(it.n1) * u0(it.n2) * std::conj(u0(it.n3)) * it.kernel;
  });
  for (Channel ch : kChannels) out[ch] = propagate(out[ch], t);
  return out;
}

/// Largest |Omega| over support triples of u0.
template <typename Scalar>
wide_int max_resonance_frequency(const SpectralField<Scalar>& u0) {
  wide_int best = 0;
  for_each_interaction(u0, Scalar(0), [&](const PicardInteraction<Scalar>& it) {
    best = std::max(best, it.omega < 0 ? -it.omega : it.omega);
  });
  return best;
}

/// u_3(t) by composite K-point Gauss-Legendre in s, panels sized so that each
/// resolves the fastest phase e^{-i Omega s} (|Omega| h <= 4).
template <typename Scalar>
NonlinearTerms<Scalar> third_picard_quadrature(const SpectralField<Scalar>& u0, Scalar t, int K) {
  if (K < 4) throw std::invalid_argument("quadrature needs at least 4 Gauss nodes per panel");
  const int limit = 3 * u0.bandlimit();
  NonlinearTerms<Scalar> out{SpectralField<Scalar>(limit), SpectralField<Scalar>(limit), SpectralField<Scalar>(limit),
                             SpectralField<Scalar>(limit)};
  const double omega = static_cast<double>(max_resonance_frequency(u0));
  const auto panels = static_cast<std::int64_t>(std::max(1.0, std::ceil(omega * std::abs(static_cast<double>(t)) / 4.0)));
  const GaussRule rule = gauss_legendre(K);
  const Scalar h = t / static_cast<Scalar>(panels);
  for (std::int64_t p = 0; p < panels; ++p) {
    const Scalar mid = (static_cast<Scalar>(p) + Scalar(0.5)) * h;
    for (int k = 0; k < K; ++k) {
      const Scalar s = mid + Scalar(0.5) * h * static_cast<Scalar>(rule.nodes[k]);
      const std::complex<Scalar> w(Scalar(0.5) * h * static_cast<Scalar>(rule.weights[k]));
      const auto terms = nonlinearity_terms(propagate(u0, s));
      for (Channel ch : kChannels) out[ch] += w * propagate(terms[ch], t - s);
    }
  }
  return out;
}

enum class PicardMethod { exact, quadrature };

template <typename Scalar>
SpectralField<Scalar> third_picard_iterate(const SpectralField<Scalar>& u0, Scalar t, PicardMethod method, int K = 32) {
  return method == PicardMethod::exact ? third_picard_exact(u0, t).total() : third_picard_quadrature(u0, t, K).total();
}

/// P(m+1) - P(m) + P(-m) - P(-m+1), checked against -2m.
std::int64_t omega_star(std::int64_t m);

/// v_n = -i + e^{inx} + f^{-2}(e^{ifx} + e^{i(n-f)x}).
struct CounterexampleField {
  std::int64_t n = 0;
  std::int64_t f = 0;
  SpectralField<double> field;
};

CounterexampleField vn_family(std::int64_t n, std::int64_t f);

struct EnergyValue {
  double re = 0;
  double im = 0;
};

/// <i u d_x^2 |d_x| |u|^2, d_x^2 u> under the pairing sum_k g_k conj(h_k); I(u) is the real part.
template <typename Scalar>
std::complex<Scalar> energy_pairing(const SpectralField<Scalar>& u) {
  const std::complex<Scalar> i(0, 1);
  const auto mod2 = multiply(u, conjugate(u));
  const auto g = apply_symbol(mod2, [](std::int64_t k) {
    const auto kk = static_cast<Scalar>(k);
    return -kk * kk * std::abs(kk);
  });
  const auto h = i * multiply(u, g);
  const auto d2u = apply_symbol(u, [](std::int64_t k) {
    const auto kk = static_cast<Scalar>(k);
    return -kk * kk;
  });
  return inner(h, d2u);
}

EnergyValue energy_functional_I(const SpectralField<double>& u);

/// Closed form of Re I(v_n): 4f - 10n + 12n^2/f - 8n^3/f^2 + 2n^4/f^3.
double energy_closed_form(std::int64_t n, std::int64_t f);

/// The reference polynomial 4f - 7n + 10n^2/f - 10n^3/f^2 + 5n^4/f^3 - n^5/f^4.
double energy_reference_polynomial(std::int64_t n, std::int64_t f);

/// Reference polynomial divided by I(v_n) at (n, f) = (4, 16); exactly 43.796875 / 34.125.
double energy_calibration_constant();

struct ViscousParams {
  double mu = 1;
  double dt = 1e-3;
  std::int64_t steps = 1;
  bool nonlinear = true;
};

void validate(const ViscousParams& p);

/// One integrating-factor RK4 step for u_t = (mu d_x^2 + iP(D)) u + N(u), with N
/// truncated to the bandlimit of u and E = e^{(-mu n^2 + iP(n)) dt} applied exactly.
template <typename Scalar>
SpectralField<Scalar> viscous_step(const SpectralField<Scalar>& u, const ViscousParams& p) {
  using Complex = std::complex<Scalar>;
  const int N = u.bandlimit();
  const Scalar h = static_cast<Scalar>(p.dt);
  auto factor = [&](Scalar dt) {
    return [&, dt](std::int64_t n) {
      const Scalar decay = std::exp(-static_cast<Scalar>(p.mu) * static_cast<Scalar>(n * n) * dt);
      const Scalar phase = static_cast<Scalar>(static_cast<double>(dispersion(n))) * dt;
      return std::polar(decay, phase);
    };
  };
  const auto full = factor(h), half = factor(h / 2);
  if (!p.nonlinear) return apply_symbol(u, full);
  auto F = [&](const SpectralField<Scalar>& v) { return nonlinearity(v).truncated(N); };
  const Complex hh(h / 2), hf(h), h6(h / 6), two(2);
  const auto k1 = F(u);
  const auto ua = apply_symbol(u + hh * k1, half);
  const auto k2 = F(ua);
  const auto ub = apply_symbol(u, half) + hh * k2;
  const auto k3 = F(ub);
  const auto uc = apply_symbol(u, full) + hf * apply_symbol(k3, half);
  const auto k4 = F(uc);
  return apply_symbol(u, full) + h6 * (apply_symbol(k1, full) + two * apply_symbol(k2 + k3, half) + k4);
}

struct TrajectoryRow {
  std::int64_t step = 0;
  double time = 0;
  double h2_norm = 0;
  double I_value = 0;
};

struct ViscousTrajectory {
  SpectralField<double> final_state;
  std::vector<TrajectoryRow> rows;
  bool blew_up = false;
  std::string diagnostic;
};

inline constexpr double kBlowupThreshold = 1e12;

ViscousTrajectory viscous_solve(const SpectralField<double>& u0, const ViscousParams& p);

/// ||u_h - u_{h/2}|| / ||u_{h/2} - u_{h/4}|| at fixed final time T with h = T / steps; ~16 for RK4.
double step_halving_ratio(const SpectralField<double>& u0, double mu, double T, std::int64_t steps);

/// Ill-posedness data m^{-s}(e^{-imx} + e^{-i(m-1)x} + e^{i(m+1)x}).
SpectralField<double> illposed_data(std::int64_t m, double s);

struct PicardReport {
  std::int64_t m = 0;
  double s = 0;
  double t = 0;
  std::int64_t peak_mode = 0;
  double peak_abs = 0;         // |u_3(m)| from the three derivative terms
  double full_abs = 0;         // |u_3(m)| including |u|^2 u
  double cubic_abs = 0;        // |u_3(m)| of |u|^2 u alone
  double closed_form_abs = 0;  // (t / m^{3s}) (13m + 7) / 4
  double rel_dev = 0;
  double scaled_peak = 0;      // m^s peak_abs
  double scaled_full = 0;      // m^s full_abs
  std::int64_t dominant_mode = 0;
  double data_norm = 0;        // ||u_0||_{H^s}
  double quadrature_rel_diff = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::pair<std::int64_t, std::complex<double>>> coefficients;  // nonzero modes of u_3 (all terms)
};

struct IllposedOptions {
  bool compare_quadrature = false;
  int quadrature_nodes = 32;
};

PicardReport illposedness_experiment(std::int64_t m, double s, double t_factor, const IllposedOptions& options = {});

struct PicardSweep {
  std::vector<PicardReport> rows;
  double fitted_slope = 0;       // log-log slope of m^s peak_abs against m
  double fitted_slope_full = 0;  // same with |u|^2 u included
};

PicardSweep illposedness_sweep(const std::vector<std::int64_t>& ms, double s, double t_factor,
                               const IllposedOptions& options = {});

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// max_n |a_n - b_n| / max_n |b_n|
double relative_difference(const SpectralField<double>& a, const SpectralField<double>& b);

}  // namespace dysthe

#endif  // DYSTHE_DYNAMICS_HPP
