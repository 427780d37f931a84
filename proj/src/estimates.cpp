#include "dysthe/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "dysthe/bump.hpp"
#include "dysthe/dispersion.hpp"
#include "dysthe/norms.hpp"
#include "dysthe/parallel.hpp"
#include "dysthe/summation.hpp"

namespace dysthe {
namespace {

constexpr double kFourPiSq = static_cast<double>(4 * kPi * kPi);

SampleRow make_row(double size, std::int64_t trial, double lhs, double rhs) {
  SampleRow row{size, trial, lhs, rhs, 0.0, false};
  if (!(rhs > 0) || !std::isfinite(lhs) || !std::isfinite(rhs))
    row.skipped = true;
  else
    row.ratio = lhs / rhs;
  return row;
}

template <typename Trial>
RatioReport run_sweep(const std::string& id, std::uint64_t seed, const SweepOptions& options, Trial&& trial) {
  if (options.sizes.empty()) throw std::invalid_argument(id + ": empty size sweep");
  if (options.trials < 1) throw std::invalid_argument(id + ": trials must be positive");
  RatioReport report;
  report.estimate_id = id;
  report.seed = seed;
  const std::size_t per = static_cast<std::size_t>(options.trials);
  report.rows.resize(options.sizes.size() * per);
  parallel_for(report.rows.size(), options.threads, [&](std::size_t i) {
    const int size = options.sizes[i / per];
    const auto t = static_cast<std::int64_t>(i % per);
    report.rows[i] = trial(size, t, sweep_seed(seed, size, t));
  });
  finalize(report);
  return report;
}

}  // namespace

void finalize(RatioReport& report) {
  report.trend.clear();
  report.samples = report.skipped = 0;
  report.max_ratio = report.mean_ratio = 0;
  CompensatedSum<double> total;
  std::map<double, std::size_t> index;
  for (const auto& row : report.rows) {
    auto it = index.find(row.size_param);
    if (it == index.end()) {
      it = index.emplace(row.size_param, report.trend.size()).first;
      report.trend.push_back(TrendPoint{row.size_param, 0, 0, 0, 0});
    }
    auto& point = report.trend[it->second];
    if (row.skipped) {
      ++point.skipped;
      ++report.skipped;
      continue;
    }
    point.max_ratio = std::max(point.max_ratio, row.ratio);
    point.mean_ratio += row.ratio;
    ++point.samples;
    report.max_ratio = std::max(report.max_ratio, row.ratio);
    total.add(row.ratio);
    ++report.samples;
  }
  for (auto& point : report.trend)
    if (point.samples > 0) point.mean_ratio /= static_cast<double>(point.samples);
  if (report.samples > 0) report.mean_ratio = total.value() / static_cast<double>(report.samples);
}

double worst_trend_growth(const RatioReport& report) {
  double worst = 0;
  for (std::size_t i = 1; i < report.trend.size(); ++i) {
    const double prev = report.trend[i - 1].max_ratio;
    if (prev > 0) worst = std::max(worst, report.trend[i].max_ratio / prev - 1.0);
  }
  return worst;
}

std::uint64_t sweep_seed(std::uint64_t master, std::int64_t size, std::int64_t trial) {
  return trial_seed(master ^ splitmix64(static_cast<std::uint64_t>(size)), static_cast<std::uint64_t>(trial));
}

PlancherelCheck l6_plancherel_check(const SpectralField<double>& u0, int N) {
  if (N < 0) throw std::invalid_argument("partial sum index must be non-negative");
  const auto u = u0.truncated(N);
  PlancherelCheck out;
  out.lhs = std::pow(lp_norm(linear_solution(u), 6), 6);

  struct Term {
    std::int64_t n, j;
    std::complex<double> value;
  };
  std::vector<std::int64_t> support;
  u.for_each([&](std::int64_t n, std::complex<double> c) {
    if (c != std::complex<double>(0)) support.push_back(n);
  });
  std::vector<Term> terms;
  terms.reserve(support.size() * support.size() * support.size());
  for (auto a : support)
    for (auto b : support)
      for (auto c : support)
        terms.push_back({a + b + c, to_int64(dispersion(a) + dispersion(b) + dispersion(c)), u(a) * u(b) * u(c)});
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term& x, const Term& y) { return x.n != y.n ? x.n < y.n : x.j < y.j; });
  CompensatedSum<double> acc;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t k = i;
    std::complex<double> bucket(0);
    while (k < terms.size() && terms[k].n == terms[i].n && terms[k].j == terms[i].j) bucket += terms[k++].value;
    acc.add(std::norm(bucket));
    i = k;
  }
  out.rhs = kFourPiSq * acc.value();
  const double scale = std::max(std::abs(out.lhs), std::abs(out.rhs));
  out.relerr = scale == 0 ? 0 : std::abs(out.lhs - out.rhs) / scale;
  return out;
}

double lr_sobolev_exponent(int r, double eps) {
  if (r < 6 || r % 2 != 0) throw std::invalid_argument("r must be an even integer >= 6");
  return 0.25 - 1.5 / static_cast<double>(r) + eps;
}

RatioReport strichartz_l6_report(const RandomFieldSpec& spec, double eps, const SweepOptions& options) {
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  auto report = lr_strichartz_report(spec, 6, eps, options);
  report.estimate_id = "strichartz-l6";
  return report;
}

RatioReport lr_strichartz_report(const RandomFieldSpec& spec, int r, double eps, const SweepOptions& options) {
  const double exponent = lr_sobolev_exponent(r, eps);
  validate(spec);
  return run_sweep("strichartz-l" + std::to_string(r), spec.seed, options,
                   [&](int size, std::int64_t trial, std::uint64_t seed) {
                     RandomFieldSpec local = spec;
                     local.bandlimit = size;
                     local.seed = seed;
                     const auto u0 = random_spectral_field(local);
                     return make_row(size, trial, lp_norm(linear_solution(u0), r), sobolev_norm(u0, exponent));
                   });
}

RatioReport l4_ratio_report(const RandomFieldSpec& spec, SweepAxis axis, const SweepOptions& options) {
  validate(spec);
  return run_sweep("l4-x0third", spec.seed, options, [&](int size, std::int64_t trial, std::uint64_t seed) {
    RandomFieldSpec local = spec;
    if (axis == SweepAxis::bandlimit)
      local.bandlimit = size;
    else
      local.spread = size;
    local.seed = seed;
    const auto f = random_spacetime_field(local);
    return make_row(size, trial, lp_norm(f, 4), xsb_norm(f, 0.0, 1.0 / 3.0));
  });
}

DyadicCheck dyadic_bilinear_check(const SpaceTimeField<double>& f, int j, int k) {
  if (j < 0 || k < 0) throw std::invalid_argument("dyadic indices must be non-negative");
  const auto fj = dyadic_piece(f, j), fjk = dyadic_piece(f, j + k);
  DyadicCheck out;
  const double a = lp_norm(fj, 2), b = lp_norm(fjk, 2);
  if (a == 0 || b == 0) {
    out.skipped = true;
    return out;
  }
  out.lhs = lp_norm(multiply(fj, fjk), 2);
  out.bound = std::exp2(2.0 * j / 3.0 + k / 6.0) * a * b;
  out.ratio = out.lhs / out.bound;
  return out;
}

DyadicReport dyadic_report(int bandlimit, int jmax, int kmax, std::int64_t fields, std::uint64_t seed, int threads) {
  if (jmax < 0 || kmax < 0 || fields < 1) throw std::invalid_argument("dyadic sweep needs jmax, kmax >= 0 and fields >= 1");
  DyadicReport out;
  auto& report = out.report;
  report.estimate_id = "dyadic-bilinear";
  report.seed = seed;
  const auto per_field = static_cast<std::size_t>((jmax + 1) * (kmax + 1));
  std::vector<SampleRow> rows(static_cast<std::size_t>(fields) * per_field);
  parallel_for(static_cast<std::size_t>(fields), threads, [&](std::size_t i) {
    const auto f = random_dyadic_field(bandlimit, jmax + kmax, trial_seed(seed, i));
    for (int k = 0; k <= kmax; ++k)
      for (int j = 0; j <= jmax; ++j) {
        const auto c = dyadic_bilinear_check(f, j, k);
        SampleRow row{static_cast<double>(k), static_cast<std::int64_t>(i) * (jmax + 1) + j, c.lhs, c.bound, c.ratio,
                      c.skipped};
        rows[i * per_field + static_cast<std::size_t>(k * (jmax + 1) + j)] = row;
      }
  });
  // k-major order so the trend runs over k.
  for (int k = 0; k <= kmax; ++k)
    for (std::int64_t i = 0; i < fields; ++i)
      for (int j = 0; j <= jmax; ++j)
        report.rows.push_back(rows[static_cast<std::size_t>(i) * per_field + static_cast<std::size_t>(k * (jmax + 1) + j)]);
  finalize(report);
  if (report.trend.size() >= 3) {
    out.monotone_growth = true;
    for (std::size_t i = 1; i < report.trend.size(); ++i)
      if (!(report.trend[i].max_ratio > report.trend[i - 1].max_ratio)) out.monotone_growth = false;
  }
  return out;
}

std::string to_string(BilinearVariant variant) {
  switch (variant) {
    case BilinearVariant::projected: return "projected";
    case BilinearVariant::projected_outer: return "projected-outer";
    case BilinearVariant::half_projected: return "half-projected";
    case BilinearVariant::unprojected: return "unprojected";
    case BilinearVariant::x_s0: return "x-s0";
    default: return "z-s-minus-1";
  }
}

BilinearVariant parse_bilinear_variant(const std::string& name) {
  for (auto v : kBilinearVariants)
    if (to_string(v) == name) return v;
  throw std::invalid_argument("unknown bilinear variant '" + name + "'");
}

BilinearCheck bilinear_z_check(const SpaceTimeField<double>& u1, const SpaceTimeField<double>& u2, double s,
                               BilinearVariant variant) {
  const bool x_variant = variant == BilinearVariant::x_s0;
  if (x_variant ? s < 0 : s < 0.5) throw std::invalid_argument("regularity s below the range of the estimate");
  auto Z = [](const SpaceTimeField<double>& f, double ss, double b) { return zsb_norm(f, ss, b); };
  auto X = [](const SpaceTimeField<double>& f, double ss, double b) { return xsb_norm(f, ss, b); };
  BilinearCheck out;
  switch (variant) {
    case BilinearVariant::x_s0:
      out.lhs = X(multiply(u1, u2), s, 0.0);
      out.rhs = X(u1, s, 1.0 / 3) * X(u2, s, 1.0 / 3);
      break;
    case BilinearVariant::z_s_minus_1:
      out.lhs = Z(multiply(u1, u2), s - 1, 0.5);
      out.rhs = Z(u1, s, 0.5) * Z(u2, s, 0.5);
      break;
    default: {
      const double core = Z(u1, s - 1, 0.5) * Z(u2, s - 1, 1.0 / 3) + Z(u1, s - 1, 1.0 / 3) * Z(u2, s - 1, 0.5);
      SpaceTimeField<double> product;
      switch (variant) {
        case BilinearVariant::projected:
          product = multiply(project_zero_mean(u1), project_zero_mean(u2));
          out.rhs = core;
          break;
        case BilinearVariant::projected_outer:
          product = project_zero_mean(multiply(project_zero_mean(u1), project_zero_mean(u2)));
          out.rhs = core;
          break;
        case BilinearVariant::half_projected:
          product = multiply(u1, project_zero_mean(u2));
          out.rhs = core + Z(u1, s - 1, 0.5) * X(u2, s, 0.0);
          break;
        default:
          product = multiply(u1, u2);
          out.rhs = core + Z(u1, s - 1, 0.5) * X(u2, s, 0.0) + X(u1, s, 0.0) * Z(u2, s - 1, 0.5);
          break;
      }
      out.lhs = Z(product, s, -0.5);
    }
  }
  if (!(out.rhs > 0))
    out.skipped = true;
  else
    out.ratio = out.lhs / out.rhs;
  return out;
}

RatioReport bilinear_report(const RandomFieldSpec& spec, double s, BilinearVariant variant, const SweepOptions& options) {
  validate(spec);
  return run_sweep("bilinear-" + to_string(variant), spec.seed, options,
                   [&](int size, std::int64_t trial, std::uint64_t seed) {
                     RandomFieldSpec local = spec;
                     local.bandlimit = size;
                     local.seed = splitmix64(seed);
                     const auto u1 = random_spacetime_field(local);
                     local.seed = splitmix64(seed + 1);
                     const auto u2 = random_spacetime_field(local);
                     const auto c = bilinear_z_check(u1, u2, s, variant);
                     SampleRow row = make_row(size, trial, c.lhs, c.rhs);
                     row.skipped = row.skipped || c.skipped;
                     return row;
                   });
}

TrilinearCheck trilinear_check(const SpaceTimeField<double>& u, double s, double T) {
  if (!(T > 0 && T < 1)) throw std::invalid_argument("trilinear check needs 0 < T < 1");
  TrilinearCheck out;
  out.T = T;
  const double z = zsb_norm(u, s, 0.5);
  if (z == 0) {
    out.skipped = true;
    return out;
  }
  const TimeWindow window(T);
  const auto cubic = multiply(multiply(u, u), conjugate(u));
  const auto windowed = apply_time_window(cubic, std::function<double(double)>(window), window.guard());
  out.lhs_x = xsb_norm(windowed, s, -0.5);
  out.lhs_z = zsb_norm(windowed, s, -0.5);
  out.rhs = std::pow(T, 1.0 / 6) * z * z * z;
  out.ratio = out.lhs_z / out.rhs;
  out.ratio_x = out.lhs_x / out.rhs;
  return out;
}

TrilinearReport trilinear_report(const RandomFieldSpec& spec, double s, const std::vector<double>& Ts,
                                 std::int64_t fields, int threads) {
  validate(spec);
  if (Ts.empty() || fields < 1) throw std::invalid_argument("trilinear sweep needs times and at least one field");
  TrilinearReport out;
  out.report.estimate_id = "trilinear";
  out.report.seed = spec.seed;
  const std::size_t nT = Ts.size();
  out.checks.resize(static_cast<std::size_t>(fields) * nT);
  parallel_for(static_cast<std::size_t>(fields), threads, [&](std::size_t i) {
    RandomFieldSpec local = spec;
    local.seed = trial_seed(spec.seed, i);
    const auto u = random_spacetime_field(local);
    for (std::size_t k = 0; k < nT; ++k) out.checks[i * nT + k] = trilinear_check(u, s, Ts[k]);
  });
  for (std::size_t k = 0; k < nT; ++k)
    for (std::int64_t i = 0; i < fields; ++i) {
      const auto& c = out.checks[static_cast<std::size_t>(i) * nT + k];
      SampleRow row = make_row(Ts[k], i, c.lhs_z, c.rhs);
      row.skipped = row.skipped || c.skipped;
      out.report.rows.push_back(row);
    }
  finalize(out.report);
  for (std::int64_t i = 0; i < fields; ++i) {
    double lo = INFINITY, hi = 0, loz = INFINITY, hiz = 0;
    for (std::size_t k = 0; k < nT; ++k) {
      const auto& c = out.checks[static_cast<std::size_t>(i) * nT + k];
      if (c.skipped) continue;
      const double normalized = c.ratio / std::pow(c.T, 1.0 / 6);
      lo = std::min(lo, normalized);
      hi = std::max(hi, normalized);
      loz = std::min(loz, c.ratio);
      hiz = std::max(hiz, c.ratio);
    }
    out.spreads.push_back(hi > 0 ? hi / lo : 0.0);
    out.spreads_z.push_back(hiz > 0 ? hiz / loz : 0.0);
  }
  return out;
}

}  // namespace dysthe
