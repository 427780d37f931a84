#ifndef DYSTHE_DISPERSION_HPP
#define DYSTHE_DISPERSION_HPP

// Dispersive relation of the linearised periodic Dysthe equation on [0,2pi]^2.
//
// The physical relation on [0,2pi]_x x [0,32pi]_t is p(n) = -n^3/16 + n^2/8 - n/2;
// rescaling time by 16 turns it into the integer cubic P(n) = n^3 - 2n^2 + 8n used
// everywhere below. Only P is implemented.

#include <cmath>
#include <cstdint>

#include "dysthe/integer.hpp"

namespace dysthe {

/// P(n) = n^3 - 2n^2 + 8n, exact. Throws OverflowError instead of wrapping.
inline wide_int dispersion(wide_int n) {
  const wide_int n2 = checked_mul(n, n);
  const wide_int n3 = checked_mul(n2, n);
  return checked_add(checked_sub(n3, checked_mul(2, n2)), checked_mul(8, n));
}

/// P(n1+n2) - P(n1) - P(n2). Checked against n1*n2*(3(n1+n2)-4); a mismatch
/// is a logic error, never a tolerance issue.
inline wide_int resonance_identity(wide_int n1, wide_int n2) {
  const wide_int n = checked_add(n1, n2);
  const wide_int lhs = checked_sub(checked_sub(dispersion(n), dispersion(n1)), dispersion(n2));
  const wide_int rhs = checked_mul(checked_mul(n1, n2), checked_sub(checked_mul(3, n), 4));
  if (lhs != rhs) throw std::logic_error("resonance identity violated at (" + to_string(n1) + ", " + to_string(n2) + ")");
  return lhs;
}

/// Japanese bracket <x> = (1 + x^2)^{1/2}.
template <typename Scalar>
inline Scalar bracket(Scalar x) {
  return std::hypot(Scalar(1), x);
}

/// Modulation sigma(n, tau) = <tau - P(n)>. The offset is formed in exact integers.
template <typename Scalar = double>
inline Scalar modulation(std::int64_t n, std::int64_t tau) {
  const wide_int offset = checked_sub(tau, dispersion(n));
  return bracket(static_cast<Scalar>(offset));
}

/// tau - P(n) as a 64-bit integer.
inline std::int64_t modulation_offset(std::int64_t n, std::int64_t tau) {
  return to_int64(checked_sub(tau, dispersion(n)));
}

}  // namespace dysthe

#endif  // DYSTHE_DISPERSION_HPP
