#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "dysthe/dispersion.hpp"
#include "dysthe/spectral_field.hpp"

using namespace dysthe;
using Field = SpectralField<double>;
using C = std::complex<double>;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

Field random_field(int N, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Field u(N);
  for (int n = -N; n <= N; ++n) u[n] = C(g(rng), g(rng));
  return u;
}

double max_diff(const Field& a, const Field& b) {
  const int N = std::max(a.bandlimit(), b.bandlimit());
  double m = 0;
  for (int n = -N; n <= N; ++n) m = std::max(m, std::abs(a(n) - b(n)));
  return m;
}

}  // namespace

TEST_CASE("dispersion values") {
  CHECK(dispersion(0) == 0);
  CHECK(dispersion(1) == 7);
  CHECK(dispersion(-2) == -32);
  CHECK(dispersion(3) == 33);
  CHECK(dispersion(1000000) == static_cast<wide_int>(1000000) * 1000000 * 1000000 - 2 * static_cast<wide_int>(1000000) * 1000000 + 8000000);
}

TEST_CASE("dispersion overflow is reported") {
  const wide_int huge = static_cast<wide_int>(1) << 62;
  CHECK_THROWS_AS(dispersion(huge), OverflowError);
}

TEST_CASE("resonance identity examples") {
  CHECK(resonance_identity(1, -1) == 4);
  CHECK(resonance_identity(0, 5) == 0);
  CHECK(resonance_identity(2, 3) == 66);
}

TEST_CASE("resonance identity holds on a full box") {
  for (int a = -1000; a <= 1000; a += 1)
    for (int b = -1000; b <= 1000; b += 7) {
      const wide_int lhs = dispersion(a + b) - dispersion(a) - dispersion(b);
      REQUIRE(lhs == static_cast<wide_int>(a) * b * (3 * (a + b) - 4));
    }
}

TEST_CASE("propagate") {
  const auto u = random_field(6, 1);
  CHECK(max_diff(propagate(u, 0.0), u) == 0.0);
  CHECK(max_diff(propagate(u, kTwoPi), u) < 1e-9);
  const auto d = propagate(Field::delta(1), M_PI);
  CHECK(std::abs(d(1) - C(-1, 0)) < 1e-14);
  CHECK(std::abs(coefficient_energy(propagate(u, 0.37)) - coefficient_energy(u)) < 1e-12 * coefficient_energy(u));
}

TEST_CASE("multipliers") {
  CHECK(max_diff(dx(Field::delta(0)), Field(0)) == 0.0);
  CHECK(abs_dx(Field::delta(3))(3) == C(3, 0));
  CHECK(dx(Field::delta(-3))(-3) == C(0, -3));
  Field::Coeffs none;
  std::map<std::int64_t, C> partial{{1, C(2, 0)}};
  CHECK_THROWS(apply_multiplier(Field::from_modes({{1, C(1, 0)}, {2, C(1, 0)}}), partial));
  const auto ok = apply_multiplier(Field::from_modes({{1, C(1, 0)}}), partial);
  CHECK(ok(1) == C(2, 0));
}

TEST_CASE("zero-mean projection") {
  CHECK(max_diff(project_zero_mean(Field::constant(C(3, 1))), Field(0)) == 0.0);
  const auto u = Field::from_modes({{0, C(2, 0)}, {1, C(5, 0)}});
  const auto p = project_zero_mean(u);
  CHECK(p(0) == C(0, 0));
  CHECK(p(1) == C(5, 0));
  CHECK(max_diff(project_zero_mean(p), p) == 0.0);
}

TEST_CASE("products") {
  const auto u = random_field(5, 2);
  CHECK(max_diff(multiply(u, Field::constant(C(1, 0))), u) < 1e-15);
  const auto d = multiply(Field::delta(1), Field::delta(2));
  CHECK(d(3) == C(1, 0));
  const auto cosx = Field::from_modes({{1, C(1, 0)}, {-1, C(1, 0)}});
  const auto sq = multiply(cosx, cosx);
  CHECK(sq.bandlimit() == 2);
  CHECK(sq(-2) == C(1, 0));
  CHECK(sq(0) == C(2, 0));
  CHECK(sq(2) == C(1, 0));
  CHECK(sq(1) == C(0, 0));

  const auto v = random_field(7, 3), w = random_field(3, 4);
  CHECK(max_diff(multiply(u, v), multiply(v, u)) < 1e-13);
  CHECK(max_diff(multiply(u, v + w), multiply(u, v) + multiply(u, w)) < 1e-12);
  CHECK(max_diff(multiply_on_grid(u, v), multiply_exact(u, v)) < 1e-10);
  CHECK(max_diff(conjugate(conjugate(u)), u) == 0.0);
  CHECK(conjugate(Field::delta(2, C(1, 2)))(-2) == C(1, -2));
}

TEST_CASE("grid transforms") {
  const auto zero = synthesize(Field(3), 8);
  CHECK(zero.cwiseAbs().maxCoeff() == 0.0);
  const auto c = synthesize(Field::constant(C(2, -1)), 5);
  for (int k = 0; k < 5; ++k) CHECK(std::abs(c[k] - C(2, -1)) < 1e-15);
  const auto s = synthesize(Field::delta(1), 4);
  CHECK(std::abs(s[0] - C(1, 0)) < 1e-15);
  CHECK(std::abs(s[1] - C(0, 1)) < 1e-15);
  CHECK(std::abs(s[2] - C(-1, 0)) < 1e-15);
  CHECK(std::abs(s[3] - C(0, -1)) < 1e-15);
  CHECK_THROWS(synthesize(random_field(4, 5), 8));

  const auto u = random_field(9, 6);
  for (int M : {19, 20, 32, 45}) {
    const auto g = synthesize(u, M);
    CHECK(max_diff(analyze(g, 9), u) < 1e-13);
    const double grid_l2 = kTwoPi / M * g.squaredNorm();
    CHECK(std::abs(grid_l2 - kTwoPi * coefficient_energy(u)) < 1e-12 * grid_l2);
  }
}
