#include "gaf/dilog.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gaf {

namespace {

double dilog_series(double x) {
  double sum = 0.0;
  double power = x;
  for (int j = 1; j < 200; ++j) {
    const double term = power / (static_cast<double>(j) * j);
    sum += term;
    if (term < 1e-17 * sum) {
      break;
    }
    power *= x;
  }
  return sum;
}

}  // namespace

double dilog(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("dilog: argument outside [0, 1]");
  }
  constexpr double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
  if (x == 1.0) {
    return zeta2;
  }
  if (x <= 0.5) {
    return dilog_series(x);
  }
  return zeta2 - std::log(x) * std::log1p(-x) - dilog_series(1.0 - x);
}

}  // namespace gaf
