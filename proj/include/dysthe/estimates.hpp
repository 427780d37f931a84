#ifndef DYSTHE_ESTIMATES_HPP
#define DYSTHE_ESTIMATES_HPP

// Numerical checks of the space-time estimates: an exact L^6 identity and ratio
// harnesses for inequalities whose constants are unknown. A ratio report records
// lhs/rhs per trial and the largest ratio at each size; "bounded" means the
// maxima do not grow by more than a configured factor per step of the sweep.

#include <cstdint>
#include <string>
#include <vector>

#include "dysthe/random_fields.hpp"
#include "dysthe/spacetime_field.hpp"
#include "dysthe/spectral_field.hpp"

namespace dysthe {

/// Artifact thresholds for the bounded-trend checks; all overridable from the CLI.
struct Tolerances {
  double trend_growth = 0.25;     // max ratio may grow by at most this fraction per size doubling
  double trilinear_spread = 2.0;  // max/min of the trilinear ratio over the T sweep
  double dyadic_bound = 4.0;      // upper bound on the dyadic bilinear ratio
  double plancherel = 1e-9;       // relative error of the L^6 identity
  double closed_form = 1e-10;     // single-mode closed forms
};

struct SampleRow {
  double size_param = 0;
  std::int64_t trial = 0;
  double lhs = 0;
  double rhs = 0;
  double ratio = 0;
  bool skipped = false;
};

struct TrendPoint {
  double size_param = 0;
  double max_ratio = 0;
  double mean_ratio = 0;
  std::int64_t samples = 0;
  std::int64_t skipped = 0;
};

struct RatioReport {
  std::string estimate_id;
  std::int64_t samples = 0;
  std::int64_t skipped = 0;
  double max_ratio = 0;
  double mean_ratio = 0;
  std::vector<TrendPoint> trend;
  std::uint64_t seed = 0;
  std::vector<SampleRow> rows;
};

/// Builds max/mean and the per-size trend from rows; skipped rows are only counted.
void finalize(RatioReport& report);

/// Largest growth factor max_{i+1}/max_i - 1 along the trend (0 for fewer than two points).
double worst_trend_growth(const RatioReport& report);

struct SweepOptions {
  std::vector<int> sizes;
  std::int64_t trials = 1;
  int threads = 1;
};

/// Seed of trial `trial` at size `size`, independent of the other sizes in the sweep.
std::uint64_t sweep_seed(std::uint64_t master, std::int64_t size, std::int64_t trial);

struct PlancherelCheck {
  double lhs = 0;  // ||S_N u||_{L^6}^6 by exact grid quadrature
  double rhs = 0;  // 4 pi^2 sum_{n,j} |sum over the (n,j) triples of u(n1)u(n2)u(n3)|^2
  double relerr = 0;
};

PlancherelCheck l6_plancherel_check(const SpectralField<double>& u0, int N);

/// Ratio ||e^{itL} u0||_{L^6} / ||u0||_{H^eps} over random u0, swept over the bandlimit.
RatioReport strichartz_l6_report(const RandomFieldSpec& spec, double eps, const SweepOptions& options);

/// Same with L^r and H^{1/4 - 3/(2r) + eps}; r even, r >= 6.
RatioReport lr_strichartz_report(const RandomFieldSpec& spec, int r, double eps, const SweepOptions& options);

double lr_sobolev_exponent(int r, double eps);

enum class SweepAxis { bandlimit, spread };

/// Ratio ||f||_{L^4} / ||f||_{X^{0,1/3}} for random space-time fields near the curve.
RatioReport l4_ratio_report(const RandomFieldSpec& spec, SweepAxis axis, const SweepOptions& options);

struct DyadicCheck {
  double lhs = 0;
  double bound = 0;
  double ratio = 0;
  bool skipped = false;
};

/// ||f_j f_{j+k}||_{L^2} against 2^{2j/3 + k/6} ||f_j||_{L^2} ||f_{j+k}||_{L^2}.
DyadicCheck dyadic_bilinear_check(const SpaceTimeField<double>& f, int j, int k);

struct DyadicReport {
  RatioReport report;  // trend over k: max ratio across j and fields
  bool monotone_growth = false;
};

DyadicReport dyadic_report(int bandlimit, int jmax, int kmax, std::int64_t fields, std::uint64_t seed, int threads = 1);

enum class BilinearVariant {
  projected,        // ||P(u1) P(u2)||_{Z^{s,-1/2}}
  projected_outer,  // ||P(P(u1) P(u2))||_{Z^{s,-1/2}}
  half_projected,   // ||u1 P(u2)||_{Z^{s,-1/2}}
  unprojected,      // ||u1 u2||_{Z^{s,-1/2}}
  x_s0,             // ||u1 u2||_{X^{s,0}} against X^{s,1/3} norms
  z_s_minus_1,      // ||u1 u2||_{Z^{s-1,1/2}} against Z^{s,1/2} norms
};

std::string to_string(BilinearVariant variant);
BilinearVariant parse_bilinear_variant(const std::string& name);
inline constexpr BilinearVariant kBilinearVariants[] = {BilinearVariant::projected,      BilinearVariant::projected_outer,
                                                        BilinearVariant::half_projected, BilinearVariant::unprojected,
                                                        BilinearVariant::x_s0,           BilinearVariant::z_s_minus_1};

struct BilinearCheck {
  double lhs = 0;
  double rhs = 0;
  double ratio = 0;
  bool skipped = false;
};

BilinearCheck bilinear_z_check(const SpaceTimeField<double>& u1, const SpaceTimeField<double>& u2, double s,
                               BilinearVariant variant);

RatioReport bilinear_report(const RandomFieldSpec& spec, double s, BilinearVariant variant, const SweepOptions& options);

struct TrilinearCheck {
  double T = 0;
  double lhs_x = 0;  // X^{s,-1/2} part of the windowed cubic
  double lhs_z = 0;  // full Z^{s,-1/2}
  double rhs = 0;    // T^{1/6} ||u||_{Z^{s,1/2}}^3
  double ratio = 0;  // lhs_z / rhs
  double ratio_x = 0;
  bool skipped = false;
};

TrilinearCheck trilinear_check(const SpaceTimeField<double>& u, double s, double T);

struct TrilinearReport {
  RatioReport report;             // trend over T (size_param = T)
  std::vector<double> spreads;    // per field: max/min over T of ratio / T^{1/6}
  std::vector<double> spreads_z;  // per field: max/min over T of ratio
  std::vector<TrilinearCheck> checks;
};

TrilinearReport trilinear_report(const RandomFieldSpec& spec, double s, const std::vector<double>& Ts,
                                 std::int64_t fields, int threads = 1);

}  // namespace dysthe

#endif  // DYSTHE_ESTIMATES_HPP
