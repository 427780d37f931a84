#include "dysthe/dynamics.hpp"

#include <algorithm>
#include <sstream>

namespace dysthe {

std::string to_string(Channel channel) {
  switch (channel) {
    case Channel::cubic: return "cubic";
    case Channel::transport: return "transport";
    case Channel::conj_transport: return "conj_transport";
    default: return "nonlocal";
  }
}

std::int64_t omega_star(std::int64_t m) {
  if (m < 1) throw std::invalid_argument("omega_star needs m >= 1");
  const wide_int lhs = dispersion(checked_add(m, 1)) - dispersion(m) + dispersion(-m) - dispersion(checked_sub(1, m));
  const wide_int rhs = checked_mul(-2, m);
  if (lhs != rhs)
    throw std::logic_error("P(m+1) - P(m) + P(-m) - P(1-m) = " + to_string(lhs) + " differs from -2m at m = " +
                           std::to_string(m));
  return to_int64(rhs);
}

CounterexampleField vn_family(std::int64_t n, std::int64_t f) {
  if (n < 1 || f <= n) throw std::invalid_argument("v_n needs f > n >= 1");
  const std::int64_t low = n - f;
  if (low == 0 || low == n || low == f) throw std::invalid_argument("v_n modes collide");
  if (f > 1000000) throw std::invalid_argument("f too large for a dense spectral field");
  const double w = 1.0 / (static_cast<double>(f) * static_cast<double>(f));
  CounterexampleField out;
  out.n = n;
  out.f = f;
  out.field = SpectralField<double>::from_modes({{0, {0, -1}}, {n, {1, 0}}, {f, {w, 0}}, {low, {w, 0}}});
  return out;
}

EnergyValue energy_functional_I(const SpectralField<double>& u) {
  const auto z = energy_pairing(u);
  return {z.real(), z.imag()};
}

double energy_closed_form(std::int64_t n, std::int64_t f) {
  const double N = static_cast<double>(n), F = static_cast<double>(f);
  return 4 * F - 10 * N + 12 * N * N / F - 8 * N * N * N / (F * F) + 2 * N * N * N * N / (F * F * F);
}

double energy_reference_polynomial(std::int64_t n, std::int64_t f) {
  const double N = static_cast<double>(n), F = static_cast<double>(f);
  const double r = N / F;
  return 4 * F - 7 * N + 10 * N * r - 10 * N * r * r + 5 * N * r * r * r - N * r * r * r * r;
}

double energy_calibration_constant() {
  return energy_reference_polynomial(4, 16) / energy_functional_I(vn_family(4, 16).field).re;
}

void validate(const ViscousParams& p) {
  if (!(p.mu > 0)) throw std::invalid_argument("viscosity mu must be positive");
  if (!(p.dt > 0)) throw std::invalid_argument("time step must be positive");
  if (p.steps < 0) throw std::invalid_argument("step count must be non-negative");
}

ViscousTrajectory viscous_solve(const SpectralField<double>& u0, const ViscousParams& p) {
  validate(p);
  ViscousTrajectory traj;
  traj.final_state = u0;
  auto record = [&](std::int64_t step) {
    traj.rows.push_back({step, static_cast<double>(step) * p.dt, sobolev_norm(traj.final_state, 2.0),
                         energy_functional_I(traj.final_state).re});
  };
  record(0);
  for (std::int64_t k = 1; k <= p.steps; ++k) {
    auto next = viscous_step(traj.final_state, p);
    const double norm = sobolev_norm(next, 2.0);
    if (!std::isfinite(norm) || norm > kBlowupThreshold) {
      std::ostringstream msg;
      msg << "blow-up detected at step " << k << " (t = " << static_cast<double>(k) * p.dt << "): H^2 norm " << norm
          << " exceeds " << kBlowupThreshold;
      traj.blew_up = true;
      traj.diagnostic = msg.str();
      break;
    }
    traj.final_state = std::move(next);
    record(k);
  }
  return traj;
}

double step_halving_ratio(const SpectralField<double>& u0, double mu, double T, std::int64_t steps) {
  if (steps < 1) throw std::invalid_argument("step count must be positive");
  auto run = [&](std::int64_t n) {
    ViscousParams p{mu, T / static_cast<double>(n), n, true};
    auto traj = viscous_solve(u0, p);
    if (traj.blew_up) throw std::runtime_error(traj.diagnostic);
    return traj.final_state;
  };
  const auto a = run(steps), b = run(2 * steps), c = run(4 * steps);
  return std::sqrt(coefficient_energy(a - b) / coefficient_energy(b - c));
}

SpectralField<double> illposed_data(std::int64_t m, double s) {
  if (m < 1) throw std::invalid_argument("m must be positive");
  const std::complex<double> a(std::pow(static_cast<double>(m), -s));
  return SpectralField<double>::from_modes({{-m, a}, {-(m - 1), a}, {m + 1, a}});
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope fit needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

double relative_difference(const SpectralField<double>& a, const SpectralField<double>& b) {
  const int N = std::max(a.bandlimit(), b.bandlimit());
  double diff = 0, scale = 0;
  for (int n = -N; n <= N; ++n) {
    diff = std::max(diff, std::abs(a(n) - b(n)));
    scale = std::max(scale, std::abs(b(n)));
  }
  return scale == 0 ? diff : diff / scale;
}

PicardReport illposedness_experiment(std::int64_t m, double s, double t_factor, const IllposedOptions& options) {
  if (m < 4) throw std::invalid_argument("ill-posedness experiment needs m >= 4");
  if (!(t_factor > 0 && t_factor <= 0.2)) throw std::invalid_argument("t_factor must lie in (0, 0.2]");
  PicardReport r;
  r.m = m;
  r.s = s;
  r.t = t_factor / static_cast<double>(m);
  r.peak_mode = m;
  const auto u0 = illposed_data(m, s);
  r.data_norm = sobolev_norm(u0, s);
  const auto terms = third_picard_exact(u0, r.t);
  const auto full = terms.total();
  r.peak_abs = std::abs(terms.derivative_terms()(m));
  r.full_abs = std::abs(full(m));
  r.cubic_abs = std::abs(terms.cubic(m));
  const double md = static_cast<double>(m);
  r.closed_form_abs = r.t / std::pow(md, 3 * s) * (13 * md + 7) / 4;
  r.rel_dev = std::abs(r.peak_abs - r.closed_form_abs) / r.closed_form_abs;
  r.scaled_peak = std::pow(md, s) * r.peak_abs;
  r.scaled_full = std::pow(md, s) * r.full_abs;
  double best = -1;
  full.for_each([&](std::int64_t n, std::complex<double> c) {
    if (std::abs(c) > best) {
      best = std::abs(c);
      r.dominant_mode = n;
    }
    if (c != std::complex<double>(0)) r.coefficients.emplace_back(n, c);
  });
  if (options.compare_quadrature)
    r.quadrature_rel_diff = relative_difference(third_picard_quadrature(u0, r.t, options.quadrature_nodes).total(), full);
  return r;
}

PicardSweep illposedness_sweep(const std::vector<std::int64_t>& ms, double s, double t_factor,
                               const IllposedOptions& options) {
  PicardSweep sweep;
  std::vector<double> x, y, yf;
  for (auto m : ms) {
    sweep.rows.push_back(illposedness_experiment(m, s, t_factor, options));
    x.push_back(static_cast<double>(m));
    y.push_back(sweep.rows.back().scaled_peak);
    yf.push_back(sweep.rows.back().scaled_full);
  }
  if (ms.size() >= 2) {
    sweep.fitted_slope = loglog_slope(x, y);
    sweep.fitted_slope_full = loglog_slope(x, yf);
  }
  return sweep;
}

}  // namespace dysthe
