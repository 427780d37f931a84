// Runs every acceptance criterion and prints one PASS/FAIL line each. Tolerances are fixed here.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "dysthe/dynamics.hpp"
#include "dysthe/estimates.hpp"
#include "dysthe/norms.hpp"
#include "dysthe/parallel.hpp"
#include "dysthe/random_fields.hpp"
#include "dysthe/resonance.hpp"

using namespace dysthe;
using Field = SpectralField<double>;
using C = std::complex<double>;

namespace {

constexpr std::uint64_t kSeed = 20240601;
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kFourPiSq = 39.478417604357434475337963999505;

struct Verdict {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* pattern, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c, d);
  return buf;
}

int threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
}

Verdict plancherel() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0;
  for (int N : {2, 4, 8})
    for (int trial = 0; trial < 20; ++trial) {
      const auto u = random_spectral_field({N, 0.0, 0, 1, sweep_seed(kSeed, N, trial)});
      worst = std::max(worst, l6_plancherel_check(u, N).relerr);
    }
  const double secs = seconds_since(start);
  return {worst <= 1e-9 && secs < 30, fmt("max relerr %.3g (<= 1e-9), %.2f s (< 30 s)", worst, secs)};
}

Verdict resonance_oracles() {
  const auto start = std::chrono::steady_clock::now();
  std::int64_t buckets = 0, mismatches = 0;
  for (std::int64_t N : {4, 8, 16}) {
    const auto all = achievable_buckets(N);
    std::vector<char> bad(all.size(), 0);
    parallel_for(all.size(), threads(), [&](std::size_t i) {
      const ResonanceQuery q{N, all[i].first, all[i].second};
      const auto a = count_bruteforce(q), b = count_divisor(q);
      bad[i] = a.count != b.count || a.solutions != b.solutions;
    });
    buckets += static_cast<std::int64_t>(all.size());
    for (auto v : bad) mismatches += v;
  }
  const double secs = seconds_since(start);
  return {mismatches == 0 && secs < 60,
          fmt("%.0f buckets, %.0f mismatches, %.2f s (< 60 s)", double(buckets), double(mismatches), secs)};
}

Verdict sup_growth() {
  const auto rows = growth_report({8, 16, 32, 64}, threads());
  double worst = -1e9;
  for (const auto& r : rows)
    if (r.has_slope) worst = std::max(worst, r.slope);
  const auto base = count_divisor({1, 0, -4}).count;
  std::int64_t regime_max = 0;
  for (std::int64_t N : {8, 16}) regime_max = std::max(regime_max, regime_scan(N, N * N).max_count);
  std::string sups;
  for (const auto& r : rows) sups += (sups.empty() ? "" : "/") + std::to_string(r.sup);
  return {worst <= 1.0 && base == 6 && regime_max <= 3,
          "sup " + sups + fmt(", max log2 ratio %.3f (<= 1), r(0,-4) at N=1 is %.0f (= 6), regime max %.0f (<= 3)",
                              worst, double(base), double(regime_max))};
}

Verdict omega_identity() {
  const auto start = std::chrono::steady_clock::now();
  std::int64_t bad = 0;
  for (std::int64_t m = 1; m <= 10000; ++m) {
    try {
      if (omega_star(m) != -2 * m) ++bad;
    } catch (const std::logic_error&) {
      ++bad;
    }
  }
  const double secs = seconds_since(start);
  return {bad == 0 && secs < 1, fmt("%.0f failures over 1 <= m <= 10^4, %.3f s (< 1 s)", double(bad), secs)};
}

Verdict third_iterate_closed_form() {
  bool pass = true;
  std::string detail;
  for (std::int64_t m : {8, 16, 32}) {
    const auto r = illposedness_experiment(m, -0.5, 0.1, IllposedOptions{true, 32});
    pass = pass && r.rel_dev <= 0.10 && r.quadrature_rel_diff <= 1e-6;
    detail += fmt("m=%.0f |u3(m)|=%.4g vs %.4g (dev %.3f); ", double(m), r.peak_abs, r.closed_form_abs, r.rel_dev);
    detail += fmt("quad diff %.2g. ", r.quadrature_rel_diff);
  }
  return {pass, detail + "Limits: dev <= 0.10, quad diff <= 1e-6"};
}

Verdict illposed_slope() {
  const auto sw = illposedness_sweep({8, 16, 32, 64}, -0.5, 0.1, IllposedOptions{});
  return {std::abs(sw.fitted_slope - 1.0) <= 0.1,
          fmt("slope %.4f (1.0 +- 0.1); all channels %.4f", sw.fitted_slope, sw.fitted_slope_full)};
}

Verdict unitarity() {
  double worst_norm = 0, worst_period = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int N = 1 + trial % 16;
    const auto u = random_spectral_field({N, 0.0, 0, 1, sweep_seed(kSeed, 7, trial)});
    const double t = 0.1 + 0.37 * trial;
    const double before = coefficient_energy(u);
    // Physical-side L^2 of the evolved field on an exact grid.
    const auto grid = synthesize(propagate(u, t), 2 * N + 1);
    const double after = grid.squaredNorm() / double(2 * N + 1);
    worst_norm = std::max(worst_norm, std::abs(after - before) / before);
    const auto back = propagate(u, kTwoPi);
    double diff = 0;
    for (int n = -N; n <= N; ++n) diff = std::max(diff, std::abs(back(n) - u(n)));
    worst_period = std::max(worst_period, diff / std::sqrt(before));
  }
  return {worst_norm <= 1e-9 && worst_period <= 1e-9,
          fmt("norm error %.3g, 2pi-period error %.3g (<= 1e-9)", worst_norm, worst_period)};
}

Verdict bounded_trends() {
  const SweepOptions opts{{4, 8, 16}, 50, threads()};
  const RandomFieldSpec spec{4, 0.0, 4, 2, kSeed};
  const auto l4 = l4_ratio_report(spec, SweepAxis::bandlimit, opts);
  const auto l6 = strichartz_l6_report(spec, 0.1, opts);
  const double g4 = worst_trend_growth(l4), g6 = worst_trend_growth(l6);

  double closed = 0;
  for (std::int64_t n : {0, 1, 3, -5}) {
    const auto d = Field::delta(n, C(2, 1));
    const double br = std::sqrt(1.0 + double(n * n));
    const double l6_ratio = lp_norm(linear_solution(d), 6) / sobolev_norm(d, 0.1);
    closed = std::max(closed, std::abs(l6_ratio - std::pow(kFourPiSq, 1.0 / 6) / std::pow(br, 0.1)));
    SpaceTimeField<double> on(static_cast<int>(std::llabs(n)));
    on.add(n, to_int64(dispersion(n)), C(0.5, -1));
    const double l4_ratio = lp_norm(on, 4) / xsb_norm(on, 0.0, 1.0 / 3);
    closed = std::max(closed, std::abs(l4_ratio - std::pow(kFourPiSq, 0.25)));
  }
  return {g4 <= 0.25 && g6 <= 0.25 && closed <= 1e-10,
          fmt("L4 max ratios %.3f/%.3f/%.3f, ", l4.trend[0].max_ratio, l4.trend[1].max_ratio, l4.trend[2].max_ratio) +
              fmt("L6 max ratios %.3f/%.3f/%.3f; ", l6.trend[0].max_ratio, l6.trend[1].max_ratio, l6.trend[2].max_ratio) +
              fmt("worst growth %.3f (<= 0.25) per doubling; closed-form error %.2g (<= 1e-10)", std::max(g4, g6),
                  closed)};
}

Verdict dyadic() {
  const auto d = dyadic_report(4, 5, 5, 20, kSeed, threads());
  return {d.report.samples > 0 && d.report.max_ratio <= 4.0 && !d.monotone_growth,
          fmt("max ratio %.4f (<= 4.0) over %.0f samples, monotone in k: ", d.report.max_ratio,
              double(d.report.samples)) +
              (d.monotone_growth ? "yes" : "no")};
}

Verdict trilinear() {
  const auto tr = trilinear_report({4, 0.0, 4, 2, kSeed}, 0.5, {0.5, 0.25, 0.125}, 20, threads());
  double worst = 0, worst_plain = 0, over = 0;
  for (double v : tr.spreads) {
    worst = std::max(worst, v);
    over += v > 2.0;
  }
  for (double v : tr.spreads_z) worst_plain = std::max(worst_plain, v);
  auto sorted = tr.spreads;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted.empty() ? 0.0 : sorted[sorted.size() / 2];
  return {tr.report.samples > 0 && worst <= 2.0,
          fmt("max spread of ratio/T^(1/6) over 20 fields %.3f (<= 2), median %.3f, %.0f fields above 2; ", worst,
              median, over) +
              fmt("plain ratio spread %.3f", worst_plain)};
}

Verdict energy() {
  const double calib = energy_reference_polynomial(4, 16) / energy_functional_I(vn_family(4, 16).field).re;
  double worst = 0;
  for (auto [n, f] : std::vector<std::pair<std::int64_t, std::int64_t>>{{4, 64}, {6, 216}, {6, 1296}}) {
    const double value = calib * energy_functional_I(vn_family(n, f).field).re;
    worst = std::max(worst, std::abs(value - energy_reference_polynomial(n, f)) / energy_reference_polynomial(n, f));
  }
  std::vector<double> gaps;
  for (std::int64_t f : {64, 256, 1024, 4096}) gaps.push_back(std::abs(energy_functional_I(vn_family(4, f).field).re / double(f) - 4.0));
  bool trend = true;
  for (std::size_t i = 1; i < gaps.size(); ++i) trend = trend && gaps[i] < gaps[i - 1];
  return {worst <= 1e-8 && trend,
          fmt("calibrated max relerr %.4g (<= 1e-8); |I/f - 4| at f=64..4096: %.3g -> %.3g, decreasing: ", worst,
              gaps.front(), gaps.back()) +
              (trend ? "yes" : "no")};
}

Verdict viscous() {
  double worst = 0;
  const double mu = 0.1, dt = 0.01;
  const std::int64_t steps = 100;
  for (std::int64_t n : {1, 2, 3, -4, 6}) {
    const auto u0 = Field::delta(n, C(1, 0), static_cast<int>(std::llabs(n)));
    const auto uT = viscous_solve(u0, ViscousParams{mu, dt, steps, false}).final_state;
    const double t = dt * double(steps);
    const C expected = std::exp(-mu * double(n * n) * t) * propagate(u0, t)(n);
    worst = std::max(worst, std::abs(uT(n) - expected));
  }
  auto u0 = random_spectral_field({4, 1.0, 0, 1, 21});
  u0 *= C(0.3);
  const double ratio = step_halving_ratio(u0, 0.1, 0.2, 10);
  return {worst <= 1e-10 && ratio >= 12 && ratio <= 20,
          fmt("decay error %.3g (<= 1e-10), step-halving ratio %.3f (in [12, 20])", worst, ratio)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"Plancherel L6 identity", plancherel},
      {"resonance oracle equivalence", resonance_oracles},
      {"sup resonance growth", sup_growth},
      {"Omega* identity", omega_identity},
      {"third-iterate closed form", third_iterate_closed_form},
      {"ill-posedness scaling", illposed_slope},
      {"propagator unitarity and periodicity", unitarity},
      {"L4 and L6 bounded trends", bounded_trends},
      {"dyadic bilinear bound", dyadic},
      {"trilinear T-scaling", trilinear},
      {"viscosity counterexample energy", energy},
      {"viscous solver accuracy", viscous},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::printf("%s criterion %2zu: %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
