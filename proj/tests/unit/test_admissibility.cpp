#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "gaf/admissibility.hpp"

using namespace gaf;

TEST_CASE("frozen admissibility values") {
  // mpmath, tests/oracles/kernel_values.out
  const KernelSpec ml2 = KernelSpec::mittag_leffler(2.0);
  CHECK(verify_claim2(ml2, 3.0, 1.0, 1.5).slack == doctest::Approx(73.2962669386144).epsilon(1e-10));
  CHECK(verify_claim1(KernelSpec::gef(), 10.0) == doctest::Approx(0.28391027459633497).epsilon(1e-8));
  CHECK(verify_claim1(KernelSpec::gef(), 40.0) == doctest::Approx(0.28253870521854551).epsilon(1e-8));
  const double delta = estimate_delta(ml2, 100.0);
  CHECK(delta == doctest::Approx(0.01442699906).epsilon(1e-9));
  CHECK(check_major_arc(ml2, 100.0, delta).value == doctest::Approx(0.04003685614).epsilon(1e-6));
  const KernelSpec de = KernelSpec::double_exp();
  const double de_delta = estimate_delta(de, 5.0);
  CHECK(de_delta == doctest::Approx(0.0347186263833251).epsilon(1e-12));
  // the cubic term still dominates at r = 5, so the ratio exceeds 1 here
  CHECK(check_minor_arc(de, 5.0, de_delta).ratio == doctest::Approx(4.62329723929511).epsilon(1e-8));
}

TEST_CASE("claim 1 tends to 1/(2 sqrt(pi)) for the GEF") {
  // A(R) = 4 pi^2 I_0(2R) and G(R)^2 = e^{2R}, so the ratio is sqrt(R) I_0(2R) e^{-2R}
  const double limit = 0.5 / std::sqrt(std::numbers::pi);
  CHECK(verify_claim1(KernelSpec::gef(), 400.0) == doctest::Approx(limit).epsilon(2e-3));
}

TEST_CASE("claim 2 at r = s is exactly balanced") {
  for (const KernelSpec& spec : {KernelSpec::gef(), KernelSpec::mittag_leffler(2.0), KernelSpec::double_exp()}) {
    const Claim2Check c = verify_claim2(spec, 1.5, 1.2, 1.2);
    CHECK(std::abs(c.slack) <= 1e-12 * c.scale);
  }
  CHECK_THROWS(verify_claim2(KernelSpec::gef(), 1.0, 2.0, 1.0));
}

TEST_CASE("claim 2 slack is nonnegative on a grid") {
  for (const KernelSpec& spec : {KernelSpec::gef(), KernelSpec::mittag_leffler(0.5), KernelSpec::double_exp()}) {
    for (double L : {1.0, 2.0}) {
      for (double s : {1.0, 1.3, 2.0}) {
        const Claim2Check c = verify_claim2(spec, L, 1.0, s);
        CAPTURE(spec.name());
        CAPTURE(L);
        CAPTURE(s);
        CHECK(c.slack >= -1e-10 * c.scale);
      }
    }
  }
}

TEST_CASE("log G(e^t) is convex") {
  const auto t = uniform_grid(-2.0, 4.0, 128);
  for (const KernelSpec& spec : {KernelSpec::gef(), KernelSpec::mittag_leffler(3.0), KernelSpec::double_exp()}) {
    const ConvexityCheck c = check_log_convexity(spec, t);
    CAPTURE(spec.name());
    CHECK(c.min_second_difference >= -1e-10 * c.scale);
  }
  // a(e^t) grows like exp(e^t), so the Lindelof series is only affordable for small t
  const ConvexityCheck lindelof = check_log_convexity(KernelSpec::lindelof(1.0), uniform_grid(-2.0, 2.3, 128));
  CHECK(lindelof.min_second_difference >= -1e-10 * lindelof.scale);
  CHECK_THROWS(check_log_convexity(KernelSpec::gef(), uniform_grid(0.0, 1.0, 10)));
}

TEST_CASE("minor-arc ratio decays once r is large") {
  // for the GEF the ratio at delta is sqrt(r) exp(-r^{1/5}/2), decreasing for r > 5^5
  const KernelSpec gef = KernelSpec::gef();
  double previous = INFINITY;
  for (double r : {4000.0, 16000.0, 64000.0}) {
    const double ratio = check_minor_arc(gef, r, estimate_delta(gef, r)).ratio;
    const double delta = std::pow(r, -0.4);
    CHECK(ratio == doctest::Approx(std::sqrt(r) * std::exp(r * (std::cos(delta) - 1.0))).epsilon(1e-9));
    CHECK(ratio < previous);
    previous = ratio;
  }
  const KernelSpec ml2 = KernelSpec::mittag_leffler(2.0);
  previous = INFINITY;
  for (double r : {20.0, 80.0, 320.0}) {
    const double ratio = check_minor_arc(ml2, r, estimate_delta(ml2, r)).ratio;
    CHECK(ratio < previous);
    previous = ratio;
  }
}

TEST_CASE("major-arc error shrinks with r") {
  for (const KernelSpec& spec : {KernelSpec::gef(), KernelSpec::mittag_leffler(2.0)}) {
    double previous = INFINITY;
    for (double r : {100.0, 400.0, 1600.0}) {
      const double err = check_major_arc(spec, r, estimate_delta(spec, r)).value;
      CHECK(err < previous);
      previous = err;
    }
  }
}

TEST_CASE("report rows") {
  const std::vector<double> r{2.0, 8.0, 32.0};
  const auto t = uniform_grid(-2.0, 4.0, 64);
  const AdmissibilityReport rep = admissibility_report(KernelSpec::gef(), r, t);
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.b_divergent);
  CHECK(rep.rows[1].a == doctest::Approx(8.0));
  CHECK(rep.rows[1].delta_hat == doctest::Approx(std::pow(8.0, -0.4)));
  CHECK(rep.convexity_min >= -1e-10 * rep.convexity_scale);
  CHECK(rep.rows[2].minor_arc_ratio_quarter < rep.rows[2].minor_arc_ratio);
}
