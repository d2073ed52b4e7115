#include <cmath>
#include <complex>
#include <random>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "gaf/linstat.hpp"

using namespace gaf;

TEST_CASE("bump is a C^2 plateau-to-zero profile") {
  for (double eta : {1.0, 0.5, 0.2}) {
    const double top = std::exp(1.0 / eta);
    CHECK(bump(eta, 0.3).value == 1.0);
    CHECK(bump(eta, 1.0).value == 1.0);
    CHECK(bump(eta, top * 1.01).value == 0.0);
    CHECK(bump(eta, std::exp(0.5 / eta)).value == doctest::Approx(0.5));
    double previous = 1.0;
    for (int i = 1; i < 400; ++i) {
      const double r = std::exp(i / 400.0 / eta);
      const BumpValue b = bump(eta, r);
      CHECK(b.value <= previous + 1e-15);
      previous = b.value;
      CHECK(std::abs(r * b.d1) <= 1.875 * eta * (1 + 1e-12));
      CHECK(std::abs(r * r * b.d2) <= 7.65 * eta);
      const double h = 1e-6 * r;
      CHECK((bump(eta, r + h).value - bump(eta, r - h).value) / (2 * h) ==
            doctest::Approx(b.d1).epsilon(1e-5).scale(1e-3));
      CHECK((bump(eta, r + h).d1 - bump(eta, r - h).d1) / (2 * h) ==
            doctest::Approx(b.d2).epsilon(1e-5).scale(1e-3));
    }
    // first and second derivatives vanish at both ends
    CHECK(std::abs(bump(eta, 1.0 + 1e-9).d2) < 1e-6);
    CHECK(std::abs(bump(eta, top * (1 - 1e-9)).d2) < 1e-6);
  }
}

TEST_CASE("test function arguments") {
  CHECK_THROWS_AS(TestFunction(-1, 0.5, 1.0), ConfigError);
  CHECK_THROWS_AS(TestFunction(0, 0.0, 1.0), ConfigError);
  CHECK_THROWS_AS(TestFunction(0, 1.5, 1.0), ConfigError);
  CHECK_THROWS_AS(TestFunction(0, 0.5, 0.5), ConfigError);
  const TestFunction tf(2, 0.5, 3.0);
  CHECK(tf.support_radius() == doctest::Approx(3.0 * std::exp(2.0)));
  const std::complex<double> z{4.0, 3.0};
  CHECK(std::abs(tf.value(z) - z * z * bump(0.5, 5.0 / 3.0).value) < 1e-14);
  CHECK(tf.value({30.0, 0.0}) == std::complex<double>{});
}

TEST_CASE("Laplacian agrees with a finite-difference stencil") {
  for (const auto& [k, eta, L] : {std::tuple{0, 1.0, 1.0}, std::tuple{1, 0.5, 2.0}, std::tuple{3, 0.7, 1.5}}) {
    const TestFunction tf(k, eta, L);
    for (std::complex<double> z : {std::complex<double>{1.3, 0.9}, std::complex<double>{-2.1, 0.4},
                                   std::complex<double>{0.2, -2.5}}) {
      if (std::abs(z) < L || std::abs(z) > tf.support_radius()) {
        continue;
      }
      const double h = 1e-3;
      const std::complex<double> fd = (tf.value(z + h) + tf.value(z - h) + tf.value(z + std::complex<double>{0, h}) +
                                       tf.value(z - std::complex<double>{0, h}) - 4.0 * tf.value(z)) /
                                      (h * h);
      const std::complex<double> lap = tf.laplacian(z);
      CAPTURE(k);
      CHECK(std::abs(fd - lap) <= 1e-5 * std::max(1.0, std::abs(lap)));
      const double m = std::abs(z);
      CHECK(std::abs(lap - tf.radial_laplacian(m) * std::polar(1.0, k * std::arg(z))) < 1e-12 * (1 + std::abs(lap)));
    }
  }
}

TEST_CASE("expected statistic") {
  const TestFunction tf(0, 0.5, 1.0);
  // mpmath, tests/oracles/kernel_values.out
  CHECK(expected_statistic(KernelSpec::gef(), tf).real() == doctest::Approx(9.7495664140181810339).epsilon(1e-10));
  for (const KernelSpec& spec : {KernelSpec::gef(), KernelSpec::mittag_leffler(2.0), KernelSpec::double_exp()}) {
    const TestFunction t(0, 0.8, 1.2);
    CHECK(expected_statistic(spec, t).real() == doctest::Approx(expected_statistic_by_parts(spec, t)).epsilon(1e-9));
  }
  CHECK(expected_statistic(KernelSpec::gef(), TestFunction(2, 0.5, 1.0)) == std::complex<double>{});
}

TEST_CASE("variance quadrature against the independent oracle") {
  // tests/oracles/gef_variance.py: mpmath double integral over the GEF kernel
  const std::vector<std::tuple<int, double, double, double>> cases{
      {0, 1.0, 1.0, 0.23058018947138992},  {1, 1.0, 1.0, 0.8293706685665992},
      {0, 0.5, 1.0, 0.04739730617829855},  {1, 0.5, 1.0, 0.5686240914348665},
      {0, 0.5, 2.0, 0.015816795187565538}, {0, 1.0, 2.0, 0.14351954774944112},
      {0, 1.0, 4.0, 0.05500011031876526},  {0, 0.25, 1.0, 0.0035608579415122394},
      {0, 1.0 / 3.0, 1.0, 0.011214122031147081}, {1, 1.0 / 3.0, 1.0, 0.34890289592299406},
  };
  for (const auto& [k, eta, L, expected] : cases) {
    const TestFunction tf(k, eta, L);
    CAPTURE(k);
    CAPTURE(eta);
    CAPTURE(L);
    const double q = variance_quadrature(KernelSpec::gef(), tf);
    CHECK(q == doctest::Approx(expected).epsilon(1e-5));
    CHECK(variance_bound(KernelSpec::gef(), tf) >= q);
  }
}

TEST_CASE("the bound dominates the quadrature for other kernels") {
  for (const KernelSpec& spec : {KernelSpec::mittag_leffler(2.0), KernelSpec::mittag_leffler(0.5)}) {
    for (const auto& [k, eta, L] : {std::tuple{0, 1.0, 1.0}, std::tuple{1, 0.5, 2.0}}) {
      const TestFunction tf(k, eta, L);
      CAPTURE(spec.name());
      CHECK(variance_bound(spec, tf) >= variance_quadrature(spec, tf));
    }
  }
  CHECK(variance_bound_final_form(2.0, TestFunction(0, 0.5, 4.0)) == doctest::Approx(2.0 * 0.25 / 16.0));
}

TEST_CASE("variance decreases with eta and L") {
  const KernelSpec gef = KernelSpec::gef();
  const double v1 = variance_quadrature(gef, TestFunction(0, 1.0, 1.0));
  const double v2 = variance_quadrature(gef, TestFunction(0, 0.5, 1.0));
  const double v3 = variance_quadrature(gef, TestFunction(0, 0.25, 1.0));
  CHECK(v2 < v1);
  CHECK(v3 < v2);
  // faster than eta^2
  CHECK(v3 / v2 < 0.25);
  const double w2 = variance_quadrature(gef, TestFunction(0, 1.0, 2.0));
  CHECK(w2 < v1);
}

TEST_CASE("Monte-Carlo variance agrees with the quadrature") {
  const TestFunction tf(0, 1.0, 1.0);
  const VarianceEstimate mc = variance_mc(KernelSpec::gef(), tf, 3000, 17, 4);
  CHECK(mc.failed == 0);
  CHECK(mc.trials == 3000);
  CHECK(std::abs(mc.variance - 0.23058018947138992) <= 4.0 * mc.std_error);
  CHECK(std::abs(mc.mean.real() - expected_statistic(KernelSpec::gef(), tf).real()) <=
        4.0 * std::sqrt(mc.variance / 3000));
}

TEST_CASE("jackknife against an explicit leave-one-out loop") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  std::vector<std::complex<double>> v(50);
  for (auto& x : v) {
    x = {g(rng), 2.0 * g(rng)};
  }
  auto sample_var = [](const std::vector<std::complex<double>>& xs) {
    std::complex<double> m;
    for (auto x : xs) {
      m += x;
    }
    m /= double(xs.size());
    double s = 0.0;
    for (auto x : xs) {
      s += std::norm(x - m);
    }
    return s / (xs.size() - 1.0);
  };
  std::vector<double> loo;
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto w = v;
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
    loo.push_back(sample_var(w));
  }
  double mean = 0.0;
  for (double x : loo) {
    mean += x / loo.size();
  }
  double spread = 0.0;
  for (double x : loo) {
    spread += (x - mean) * (x - mean);
  }
  const double n = double(v.size());
  const VarianceEstimate est = variance_of_samples(v);
  CHECK(est.variance == doctest::Approx(sample_var(v)).epsilon(1e-13));
  CHECK(est.std_error == doctest::Approx(std::sqrt((n - 1) / n * spread)).epsilon(1e-10));
}

TEST_CASE("statistics do not depend on the thread count") {
  const std::vector<TestFunction> tfs{TestFunction(0, 1.0, 1.0), TestFunction(1, 0.5, 1.0)};
  const StatisticSamples one = sample_statistics(KernelSpec::gef(), tfs, 64, 9, 1);
  const StatisticSamples many = sample_statistics(KernelSpec::gef(), tfs, 64, 9, 4);
  CHECK(one.values == many.values);
  CHECK(one.failed == many.failed);
}

TEST_CASE("linear statistic refuses a zero set that does not cover the support") {
  ZeroSet zeros;
  zeros.disk_radius = 2.0;
  CHECK_THROWS_AS(linear_statistic(zeros, TestFunction(0, 1.0, 1.0)), SupportExceedsValidity);
  zeros.disk_radius = 3.0;
  zeros.points = {{0.5, 0.0}, {2.0, 0.0}};
  CHECK(linear_statistic(zeros, TestFunction(0, 1.0, 1.0)).real() ==
        doctest::Approx(1.0 + bump(1.0, 2.0).value));
}
