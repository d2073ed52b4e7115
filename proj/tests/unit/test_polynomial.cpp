#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "gaf/assignment.hpp"
#include "gaf/polynomial.hpp"

using namespace gaf;

namespace {

std::vector<Complex> from_roots(const std::vector<Complex>& roots) {
  std::vector<Complex> c{1.0};
  for (const Complex& r : roots) {
    std::vector<Complex> next(c.size() + 1);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return c;
}

}  // namespace

TEST_CASE("roots of small polynomials") {
  const std::vector<Complex> c{-6.0, 11.0, -6.0, 1.0};
  const PolynomialRoots r = polynomial_roots(c);
  REQUIRE(r.roots.size() == 3);
  const std::vector<Complex> expected{1.0, 2.0, 3.0};
  CHECK(matching_distance(r.roots, expected) < 1e-12);
  CHECK(std::all_of(r.converged.begin(), r.converged.end(), [](bool b) { return b; }));
  const PolynomialRoots unit = polynomial_roots(std::vector<Complex>{1.0, 0.0, 0.0, 0.0, 1.0});
  for (const Complex& z : unit.roots) {
    CHECK(std::abs(std::pow(z, 4.0) + 1.0) < 1e-13);
  }
}

TEST_CASE("leading and trailing zeros") {
  // w^2 (w - 2), stored with a zero top coefficient
  const PolynomialRoots r = polynomial_roots(std::vector<Complex>{0.0, 0.0, -2.0, 1.0, 0.0});
  REQUIRE(r.roots.size() == 3);
  CHECK(matching_distance(r.roots, std::vector<Complex>{0.0, 0.0, 2.0}) < 1e-13);
  CHECK(polynomial_roots(std::vector<Complex>{5.0}).roots.empty());
}

TEST_CASE("random roots round trip") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Complex> roots(30);
    for (auto& z : roots) {
      z = {g(rng), g(rng)};
    }
    const PolynomialRoots r = polynomial_roots(from_roots(roots));
    REQUIRE(r.roots.size() == roots.size());
    CHECK(matching_distance(r.roots, roots) < 1e-6);
  }
}

TEST_CASE("roots whose moduli span e^{-15} to e^{15}") {
  // coefficients run from e^{-232} to e^{232}; w^60 at the largest root is e^{900}
  std::vector<Complex> roots;
  for (int j = -30; j <= 30; ++j) {
    roots.push_back(std::polar(std::exp(0.5 * j), double(j)));
  }
  const std::vector<Complex> c = from_roots(roots);
  const PreparedPolynomial p(c);
  CHECK(p.dominant_index(1.2) == 31);
  CHECK(p.dominant_index(std::exp(10.0)) == 50);
  const PolynomialRoots r = polynomial_roots(c);
  REQUIRE(r.roots.size() == roots.size());
  for (const Complex& z : roots) {
    double best = INFINITY;
    for (const Complex& w : r.roots) {
      best = std::min(best, std::abs(w - z) / std::abs(z));
    }
    CHECK(best < 1e-9);
  }
  CHECK(std::all_of(r.converged.begin(), r.converged.end(), [](bool b) { return b; }));
}

TEST_CASE("Newton ratio and backward error") {
  const std::vector<Complex> c{-6.0, 11.0, -6.0, 1.0};
  const NewtonRatio at_root = newton_ratio(c, 2.0);
  CHECK(at_root.converged);
  CHECK(std::isinf(at_root.log_abs_value));
  const NewtonRatio away = newton_ratio(c, Complex{0.5, 0.5});
  CHECK_FALSE(away.converged);
  const Complex w{0.5, 0.5};
  const Complex p = ((w - 6.0) * w + 11.0) * w - 6.0;
  const Complex dp = (3.0 * w - 12.0) * w + 11.0;
  CHECK(std::abs(away.ratio - p / dp) < 1e-14);
  CHECK(away.log_abs_value == doctest::Approx(std::log(std::abs(p))));
}
