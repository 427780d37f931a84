#include <doctest.h>

#include <cmath>
#include <random>

#include "dysthe/dispersion.hpp"
#include "dysthe/norms.hpp"

using namespace dysthe;
using C = std::complex<double>;
using STField = SpaceTimeField<double>;

namespace {

constexpr double kFourPiSq = 39.478417604357434475337963999505;

STField near_curve_field(int N, int spread, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::uniform_int_distribution<int> off(-spread, spread);
  STField f(N);
  for (int n = -N; n <= N; ++n)
    for (int r = 0; r < 3; ++r) f.add(n, to_int64(dispersion(n)) + off(rng), C(g(rng), g(rng)));
  return f;
}

STField single(std::int64_t n, std::int64_t tau, C value = C(1, 0)) {
  STField f(static_cast<int>(std::llabs(n)));
  f.add(n, tau, value);
  return f;
}

}  // namespace

TEST_CASE("sobolev norm") {
  CHECK(sobolev_norm(SpectralField<double>(3), 1.0) == 0.0);
  CHECK(sobolev_norm(SpectralField<double>::delta(0), 2.5) == doctest::Approx(1.0));
  CHECK(sobolev_norm(SpectralField<double>::delta(1), 1.0) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("lp norm of single modes and zero") {
  for (int p : {2, 4, 6, 8}) {
    const auto f = single(3, 17, C(0, 1));
    CHECK(lp_norm(f, p) == doctest::Approx(std::pow(kFourPiSq, 1.0 / p)).epsilon(1e-12));
  }
  CHECK(lp_norm(STField(2), 4) == 0.0);
  CHECK_THROWS(lp_norm(single(1, 1), 3));
}

TEST_CASE("lp norm grid too small names the requirement") {
  const auto f = near_curve_field(3, 2, 7);
  try {
    lp_norm(f, 4, QuadratureGrid{4, 4});
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("M_x >= ") != std::string::npos);
  }
}

TEST_CASE("L2 is Parseval and matches X^{0,0}") {
  const auto f = near_curve_field(5, 4, 11);
  const double l2 = lp_norm(f, 2);
  CHECK(l2 == doctest::Approx(2 * M_PI * std::sqrt(coefficient_energy(f))).epsilon(1e-12));
  CHECK(std::abs(xsb_norm(f, 0.0, 0.0) - l2 / (2 * M_PI)) < 1e-10);
}

TEST_CASE("L4 matches a direct quadrature on an oversized grid") {
  const auto f = near_curve_field(3, 3, 12);
  const auto g = minimal_quadrature_grid(f, 4);
  const double a = lp_norm(f, 4, g);
  const double b = lp_norm(f, 4, QuadratureGrid{g.space + 7, g.time + 13});
  CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("bourgain norms on simple inputs") {
  const auto on = single(2, to_int64(dispersion(2)));
  for (double b : {-0.5, 0.0, 0.5, 1.0}) {
    CHECK(xsb_norm(on, 0.0, b) == doctest::Approx(1.0));
    CHECK(ysb_norm(on, 0.0, b) == doctest::Approx(1.0));
  }
  const auto off = single(1, 7 + 1);
  CHECK(xsb_norm(off, 0.0, 1.0) == doctest::Approx(std::sqrt(2.0)));
  STField zero(3);
  CHECK(xsb_norm(zero, 1.0, 0.5) == 0.0);
  CHECK(ysb_norm(zero, 1.0, 0.5) == 0.0);
  CHECK(zsb_norm(zero, 1.0, 0.5) == 0.0);
  CHECK(zsb_norm(off, 0.0, 1.0) == doctest::Approx(std::sqrt(2.0) + std::pow(2.0, 0.25)));
}

TEST_CASE("dyadic levels and pieces") {
  CHECK(dyadic_level(0) == 0);
  CHECK(dyadic_level(1) == 1);
  CHECK(dyadic_level(3) == 2);
  CHECK(dyadic_level(-3) == 2);
  CHECK(dyadic_level(4) == 3);  // sqrt(17) > 4
  for (std::int64_t d = -5000; d <= 5000; ++d) {
    const int j = dyadic_level(d);
    const double s = std::sqrt(1.0 + double(d) * double(d));
    REQUIRE(s <= std::ldexp(1.0, j) * (1 + 1e-15));
    if (j > 0) REQUIRE(s > std::ldexp(1.0, j - 1));
  }

  const auto f = near_curve_field(4, 40, 3);
  const int top = max_dyadic_level(f);
  STField sum(f.spatial_bandlimit());
  double energy = 0;
  for (int j = 0; j <= top; ++j) {
    const auto piece = dyadic_piece(f, j);
    energy += std::pow(xsb_norm(piece, 0.0, 0.0), 2);
    sum = sum + piece;
  }
  CHECK(energy == doctest::Approx(std::pow(xsb_norm(f, 0.0, 0.0), 2)).epsilon(1e-13));
  double diff = 0;
  f.for_each([&](std::int64_t n, std::int64_t tau, C c) { diff = std::max(diff, std::abs(sum(n, tau) - c)); });
  CHECK(diff == 0.0);
  CHECK(dyadic_piece(single(1, 7), 0)(1, 7) == C(1, 0));
  CHECK(dyadic_piece(single(1, 10), 2)(1, 10) == C(1, 0));
}

TEST_CASE("embedding X^{s,b+1/2} into Y^{s,b-1/2}") {
  const double c = modulation_sum_constant(0.5);
  CHECK(c == doctest::Approx(std::sqrt(M_PI / std::tanh(M_PI))).epsilon(1e-9));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto f = near_curve_field(6, 30, seed);
    for (double s : {0.0, 0.5, 1.0})
      for (double b : {0.0, 0.5}) CHECK(ysb_norm(f, s, b - 0.5) <= c * xsb_norm(f, s, b + 0.5) * (1 + 1e-12));
  }
}

TEST_CASE("embedding Y^{s,0} into sup_t H^s") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto f = near_curve_field(5, 10, 100 + seed);
    const double y = ysb_norm(f, 1.0, 0.0);
    for (int k = 0; k < 64; ++k) CHECK(sobolev_norm(time_slice(f, 2 * M_PI * k / 64), 1.0) <= y * (1 + 1e-12));
  }
}
