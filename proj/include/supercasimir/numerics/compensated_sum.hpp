#pragma once

#include <cmath>

namespace supercasimir::numerics {

/// Neumaier's variant of Kahan summation. Unlike plain Kahan it stays exact
/// when an addend is larger in magnitude than the running sum, which happens
/// routinely when partial integrals of mixed sign are combined.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double initial) : sum_(initial) {}

  CompensatedSum& operator+=(double value) {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  double value() const { return sum_ + compensation_; }
  explicit operator double() const { return value(); }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace supercasimir::numerics
