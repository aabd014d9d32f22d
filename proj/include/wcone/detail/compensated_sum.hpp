#pragma once

namespace wcone::detail {

/// Kahan compensated summation; keeps the absolute error near one ulp of the
/// running sum independent of the number of terms.
class CompensatedSum {
 public:
  void add(double v) {
    const double y = v - compensation_;
    const double t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace wcone::detail
