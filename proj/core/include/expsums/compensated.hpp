#pragma once

#include <cmath>
#include <complex>

#ifdef __FAST_MATH__
#error "-ffast-math reassociates the compensation term away"
#endif

namespace expsums {

/// Neumaier's variant of Kahan summation: also correct when the incoming
/// term is larger in magnitude than the running sum.
class CompensatedSum {
 public:
  void add(double value) noexcept {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double value) noexcept {
    add(value);
    return *this;
  }

  [[nodiscard]] double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

class CompensatedComplexSum {
 public:
  CompensatedComplexSum& operator+=(std::complex<double> z) noexcept {
    re_.add(z.real());
    im_.add(z.imag());
    return *this;
  }

  [[nodiscard]] std::complex<double> value() const noexcept {
    return {re_.value(), im_.value()};
  }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

}  // namespace expsums
