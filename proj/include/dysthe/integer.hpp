#ifndef DYSTHE_INTEGER_HPP
#define DYSTHE_INTEGER_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dysthe {

/// Signed 128-bit integer used for every exact polynomial evaluation.
using wide_int = __int128;

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

inline wide_int checked_add(wide_int a, wide_int b) {
  wide_int r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

inline wide_int checked_sub(wide_int a, wide_int b) {
  wide_int r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
  return r;
}

inline wide_int checked_mul(wide_int a, wide_int b) {
  wide_int r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

/// Narrowing with a range check.
inline std::int64_t to_int64(wide_int v) {
  if (v > INT64_MAX || v < INT64_MIN) throw OverflowError("value does not fit in 64 bits");
  return static_cast<std::int64_t>(v);
}

inline std::string to_string(wide_int v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  // Work with the magnitude as unsigned so INT128_MIN is handled.
  unsigned __int128 mag = negative ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  std::string digits;
  while (mag > 0) {
    digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  return negative ? "-" + digits : digits;
}

}  // namespace dysthe

#endif  // DYSTHE_INTEGER_HPP
