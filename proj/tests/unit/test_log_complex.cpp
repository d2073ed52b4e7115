#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "gaf/log_complex.hpp"

using namespace gaf;

TEST_CASE("wrap_angle lands in (-pi, pi]") {
  const double pi = std::numbers::pi;
  CHECK(wrap_angle(pi) == doctest::Approx(pi));
  CHECK(wrap_angle(-pi) == doctest::Approx(pi));
  CHECK(wrap_angle(3 * pi / 2) == doctest::Approx(-pi / 2));
  CHECK(wrap_angle(1e6) == doctest::Approx(std::remainder(1e6, 2 * pi)).epsilon(1e-9));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  for (int i = 0; i < 1000; ++i) {
    const double t = u(rng);
    const double w = wrap_angle(t);
    CHECK(w > -pi);
    CHECK(w <= pi);
    CHECK(std::abs(std::remainder(t - w, 2 * pi)) < 1e-12);
  }
}

TEST_CASE("log_add and log_sum_exp survive huge and -inf arguments") {
  CHECK(log_add(kNegInf, kNegInf) == kNegInf);
  CHECK(log_add(kNegInf, 3.0) == 3.0);
  CHECK(log_add(1000.0, 1000.0) == doctest::Approx(1000.0 + std::log(2.0)));
  CHECK(log_add(0.0, -800.0) == 0.0);
  const std::array<double, 3> xs{5000.0, 5000.0 + std::log(3.0), kNegInf};
  CHECK(log_sum_exp(xs) == doctest::Approx(5000.0 + std::log(4.0)));
  CHECK(log_sum_exp(std::span<const double>{}) == kNegInf);
}

TEST_CASE("LogComplex arithmetic matches std::complex where representable") {
  const std::complex<double> a{3.0, -4.0}, b{-0.5, 0.25};
  const LogComplex la = LogComplex::from_complex(a), lb = LogComplex::from_complex(b);
  CHECK(la.log_mod == doctest::Approx(std::log(5.0)));
  const auto prod = (la * lb).to_complex();
  const auto quot = (la / lb).to_complex();
  CHECK(std::abs(prod - a * b) < 1e-13);
  CHECK(std::abs(quot - a / b) < 1e-13);
  CHECK(LogComplex::from_complex({0.0, 0.0}).is_zero());
  CHECK((LogComplex::zero() * la).is_zero());
  const LogComplex e = LogComplex::exp({1e5, 7.0});
  CHECK(e.log_mod == 1e5);
  CHECK(e.arg == doctest::Approx(7.0 - 2 * std::numbers::pi));
}

TEST_CASE("compensated sums recover cancelled digits") {
  CompensatedSum<double> s;
  s.add(1e16);
  for (int i = 0; i < 1000; ++i) {
    s.add(1.0);
  }
  s.add(-1e16);
  CHECK(s.value() == 1000.0);
  ComplexCompensatedSum c;
  c.add({1e16, -1e16});
  c.add({1.0, 2.0});
  c.add({-1e16, 1e16});
  CHECK(c.value() == std::complex<double>{1.0, 2.0});
}
