#include "gaf/log_complex.hpp"

#include <algorithm>

namespace gaf {

double wrap_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (theta > -std::numbers::pi && theta <= std::numbers::pi) {
    return theta;
  }
  double r = std::remainder(theta, two_pi);  // in [-pi, pi]
  if (r <= -std::numbers::pi) {
    r += two_pi;
  }
  return r;
}

LogComplex LogComplex::from_complex(std::complex<double> w) {
  if (w == std::complex<double>(0.0, 0.0)) {
    return zero();
  }
  return {std::log(std::abs(w)), std::arg(w)};
}

LogComplex LogComplex::exp(std::complex<double> w) {
  return {w.real(), wrap_angle(w.imag())};
}

std::complex<double> LogComplex::to_complex() const {
  if (is_zero()) {
    return {0.0, 0.0};
  }
  return std::polar(std::exp(log_mod), arg);
}

LogComplex operator*(LogComplex a, LogComplex b) {
  if (a.is_zero() || b.is_zero()) {
    return LogComplex::zero();
  }
  return {a.log_mod + b.log_mod, wrap_angle(a.arg + b.arg)};
}

LogComplex operator/(LogComplex a, LogComplex b) {
  if (a.is_zero()) {
    return LogComplex::zero();
  }
  return {a.log_mod - b.log_mod, wrap_angle(a.arg - b.arg)};
}

double log_add(double x, double y) {
  if (x == kNegInf) {
    return y;
  }
  if (y == kNegInf) {
    return x;
  }
  const double hi = std::max(x, y);
  const double lo = std::min(x, y);
  return hi + std::log1p(std::exp(lo - hi));
}

double log_sum_exp(std::span<const double> xs) {
  if (xs.empty()) {
    return kNegInf;
  }
  const double top = *std::max_element(xs.begin(), xs.end());
  if (top == kNegInf || !std::isfinite(top)) {
    return top;
  }
  CompensatedSum<double> acc;
  for (double x : xs) {
    acc.add(std::exp(x - top));
  }
  return top + std::log(acc.value());
}

}  // namespace gaf
