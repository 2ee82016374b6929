#pragma once

#include <cmath>
#include <span>

namespace monobound {

// Neumaier's variant of Kahan summation. The correction term also captures
// the low-order bits when the incoming addend is larger than the running sum.
class CompensatedSum {
 public:
  constexpr CompensatedSum() = default;
  constexpr explicit CompensatedSum(double initial) : sum_(initial) {}

  CompensatedSum& operator+=(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      correction_ += (sum_ - t) + x;
    } else {
      correction_ += (x - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  // Adds a * b together with the rounding error of the product (via fma),
  // so the product contributes exactly.
  CompensatedSum& add_product(double a, double b) {
    const double product = a * b;
    *this += product;
    *this += std::fma(a, b, -product);
    return *this;
  }

  constexpr double value() const { return sum_ + correction_; }

 private:
  double sum_ = 0.0;
  double correction_ = 0.0;
};

inline double compensated_sum(std::span<const double> values) {
  CompensatedSum acc;
  for (double v : values) acc += v;
  return acc.value();
}

}  // namespace monobound
