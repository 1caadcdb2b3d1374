#pragma once

#include <cmath>

namespace lpf {

/// Neumaier's variant of Kahan summation. Order-sensitive: callers that need
/// reproducible results must add terms in a fixed order.
class CompensatedSum {
 public:
  void add(double term) {
    const double t = sum_ + term;
    if (std::fabs(sum_) >= std::fabs(term)) {
      compensation_ += (sum_ - t) + term;
    } else {
      compensation_ += (term - t) + sum_;
    }
    sum_ = t;
  }

  void add(const CompensatedSum& other) {
    add(other.sum_);
    add(other.compensation_);
  }

  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace lpf
