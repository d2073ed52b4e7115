#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "gaf/philox.hpp"
#include "gaf/zerofinder.hpp"

using namespace gaf;

TEST_CASE("roots agree with the argument principle and have small residuals") {
  const auto plan = make_plan(KernelSpec::gef(), 2.0);
  const int n = 1000;
  double sum = 0.0, sum_sq = 0.0;
  for (int s = 0; s < n; ++s) {
    const SampledFunction f(plan, derive_seed(2024, s));
    const ZeroSet zeros = zeros_in_disk(f, 2.0);
    CHECK(static_cast<int>(zeros.points.size()) == zeros.certified_count);
    CHECK(count_via_argument_principle(f, zeros.disk_radius).count == zeros.certified_count);
    CHECK(zeros.disk_radius >= 2.0);
    CHECK(zeros.disk_radius <= 2.0 * 1.001);
    for (std::size_t j = 0; j < zeros.points.size(); ++j) {
      CHECK(std::abs(zeros.points[j]) <= zeros.disk_radius);
      CHECK(zeros.residuals[j] <= kMaxResidual);
      CHECK(std::abs(f.evaluate(zeros.points[j])) <= 1e-8 * std::exp(0.5 * std::norm(zeros.points[j])));
    }
    sum += zeros.points.size();
    sum_sq += double(zeros.points.size()) * zeros.points.size();
  }
  const double mean = sum / n;
  const double sd = std::sqrt((sum_sq / n - mean * mean) / n);
  // E N(R) = a(R^2) = R^2
  CHECK(std::abs(mean - 4.0) <= 3.0 * sd);
}

TEST_CASE("zero intensity matches a'(|z|^2)/pi on annuli") {
  for (const KernelSpec& spec : {KernelSpec::gef(), KernelSpec::mittag_leffler(2.0)}) {
    CAPTURE(spec.name());
    const double R = 1.5;
    const auto plan = make_plan(spec, R);
    const std::vector<double> edges{0.0, 0.5, 0.9, 1.2, 1.5};
    std::vector<double> counts(edges.size() - 1, 0.0);
    const int n = 3000;
    for (int s = 0; s < n; ++s) {
      const ZeroSet zeros = zeros_in_disk(SampledFunction(plan, derive_seed(77, s)), R);
      for (const auto& z : zeros.points) {
        const double m = std::abs(z);
        for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
          if (m > edges[b] && m <= edges[b + 1]) {
            counts[b] += 1.0;
          }
        }
      }
    }
    for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
      const double expected = expected_zero_count(spec, edges[b + 1]) - expected_zero_count(spec, edges[b]);
      // annulus counts are at most Poisson-dispersed; zero sets are more rigid
      CHECK(std::abs(counts[b] / n - expected) <= 4.0 * std::sqrt(expected / n));
    }
  }
}

TEST_CASE("zeros on a large disk agree with a small-disk truncation") {
  // R = 55: the terms of f span about e^{1500}, so the disk is split into bands
  const std::uint64_t seed = 31;
  const SampledFunction big(make_plan(KernelSpec::gef(), 55.0), seed);
  const SampledFunction small(make_plan(KernelSpec::gef(), 10.0), seed);
  const ZeroSet zb = zeros_in_disk(big, 55.0);
  const ZeroSet zs = zeros_in_disk(small, 10.0);
  CHECK(static_cast<int>(zb.points.size()) == zb.certified_count);
  CHECK(std::abs(double(zb.points.size()) - 55.0 * 55.0) < 6.0 * std::sqrt(55.0));
  int compared = 0;
  for (const auto& z : zs.points) {
    if (std::abs(z) > 8.0) {
      continue;
    }
    double best = INFINITY;
    for (const auto& w : zb.points) {
      best = std::min(best, std::abs(w - z));
    }
    CHECK(best < 1e-6);
    ++compared;
  }
  CHECK(compared > 40);
}

TEST_CASE("double-exponential kernel on the unit disk") {
  const auto plan = make_plan(KernelSpec::double_exp(), 1.0);
  double sum = 0.0;
  const int n = 300;
  for (int s = 0; s < n; ++s) {
    const ZeroSet zeros = zeros_in_disk(SampledFunction(plan, derive_seed(5, s)), 1.0);
    CHECK(static_cast<int>(zeros.points.size()) == zeros.certified_count);
    sum += zeros.points.size();
  }
  const double expected = expected_zero_count(KernelSpec::double_exp(), 1.0);  // a(1) = e
  CHECK(sum / n == doctest::Approx(expected).epsilon(0.1));
}

TEST_CASE("radii beyond the truncation are refused") {
  const SampledFunction f(make_plan(KernelSpec::gef(), 2.0), 1);
  CHECK_THROWS_AS(zeros_in_disk(f, 2.0 * f.valid_radius()), SupportExceedsValidity);
  CHECK_THROWS_AS(zeros_in_disk(f, 0.0), SupportExceedsValidity);
}
