#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>

namespace gaf {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Reduce an angle to (-pi, pi].
double wrap_angle(double theta);

/// A nonzero complex number stored as (log|w|, arg w). Zero is log_mod = -inf, arg = 0.
/// Kernel values such as exp(exp(50)) only exist in this form.
struct LogComplex {
  double log_mod = kNegInf;
  double arg = 0.0;

  static LogComplex zero() { return {}; }
  static LogComplex from_complex(std::complex<double> w);
  /// exp(w) for a complex exponent, i.e. log_mod = Re w, arg = Im w wrapped.
  static LogComplex exp(std::complex<double> w);

  bool is_zero() const { return log_mod == kNegInf; }
  /// May overflow to inf or underflow to 0; only for values known to be representable.
  std::complex<double> to_complex() const;

  friend LogComplex operator*(LogComplex a, LogComplex b);
  friend LogComplex operator/(LogComplex a, LogComplex b);
};

/// log(exp(x) + exp(y)) without overflow; either argument may be -inf.
double log_add(double x, double y);

/// log(sum exp(x_i)).
double log_sum_exp(std::span<const double> xs);

/// Neumaier-compensated running sum.
template <typename T>
class CompensatedSum {
 public:
  void add(T x) {
    T t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

 private:
  T sum_{};
  T comp_{};
};

/// Neumaier summation on real and imaginary parts separately.
class ComplexCompensatedSum {
 public:
  void add(std::complex<double> x) {
    re_.add(x.real());
    im_.add(x.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<double> re_;
  CompensatedSum<double> im_;
};

}  // namespace gaf
