#ifndef DYSTHE_BUMP_HPP
#define DYSTHE_BUMP_HPP

#include <cmath>
#include <stdexcept>

namespace dysthe {

/// Smooth cutoff: 1 on [-1, 1], 0 outside (-2, 2), built from psi(y) = e^{-1/y}.
inline double bump(double x) {
  const auto psi = [](double y) { return y > 0 ? std::exp(-1.0 / y) : 0.0; };
  const double ax = std::abs(x);
  if (ax <= 1) return 1.0;
  if (ax >= 2) return 0.0;
  const double inner = psi(2 - ax);
  return inner / (inner + psi(ax - 1));
}

/// eta(t / T) on the time torus, t taken in [-pi, pi).
class TimeWindow {
 public:
  explicit TimeWindow(double T) : T_(T) {
    if (!(T > 0 && T <= 1)) throw std::invalid_argument("time window needs 0 < T <= 1");
  }

  double T() const { return T_; }

  double operator()(double t) const {
    const double two_pi = 2 * M_PI;
    t = std::fmod(t + M_PI, two_pi);
    if (t < 0) t += two_pi;
    return bump((t - M_PI) / T_);
  }

  /// Spectral guard wide enough that the window's Fourier tail beyond it is below ~1e-12.
  std::int64_t guard() const { return static_cast<std::int64_t>(std::ceil(400.0 / T_)); }

 private:
  double T_;
};

}  // namespace dysthe

#endif  // DYSTHE_BUMP_HPP
