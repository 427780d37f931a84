#ifndef DYSTHE_SUMMATION_HPP
#define DYSTHE_SUMMATION_HPP

#include <cmath>

namespace dysthe {

/// Neumaier compensated accumulator. Results depend only on the order of add() calls.
template <typename Scalar>
class CompensatedSum {
 public:
  void add(Scalar x) {
    const Scalar t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      carry_ += (sum_ - t) + x;
    else
      carry_ += (x - t) + sum_;
    sum_ = t;
  }
  Scalar value() const { return sum_ + carry_; }

 private:
  Scalar sum_{0};
  Scalar carry_{0};
};

}  // namespace dysthe

#endif  // DYSTHE_SUMMATION_HPP
