#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "gaf/assignment.hpp"
#include "gaf/rigidity.hpp"

using namespace gaf;

namespace {

using Points = std::vector<std::complex<double>>;

Points random_points(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 0.6);
  Points out(n);
  for (auto& z : out) {
    z = {g(rng), g(rng)};
  }
  return out;
}

}  // namespace

TEST_CASE("power sums and Newton reconstruction") {
  const Points two{1.0, 2.0};
  const auto s = power_sums(two, 3);
  REQUIRE(s.size() == 4);
  CHECK(s[0] == 2.0);
  CHECK(s[1] == 3.0);
  CHECK(s[2] == 5.0);
  CHECK(s[3] == 9.0);
  const Reconstruction r = newton_reconstruct(std::vector<std::complex<double>>{2.0, 3.0, 5.0});
  CHECK(matching_distance(r.points, two) < 1e-12);
  CHECK_FALSE(r.ill_conditioned);
  CHECK(newton_reconstruct(std::vector<std::complex<double>>{0.0}).points.empty());
}

TEST_CASE("reconstruction round trip") {
  std::mt19937_64 rng(8);
  for (int n = 1; n <= 8; ++n) {
    const Points pts = random_points(rng, n);
    const Reconstruction r = newton_reconstruct(power_sums(pts, n));
    REQUIRE(r.points.size() == pts.size());
    CHECK(matching_distance(r.points, pts) < 1e-8);
  }
}

TEST_CASE("reconstruction keeps repeated points") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    Points pts = random_points(rng, 4);
    pts.push_back(pts[0]);
    pts.push_back(pts[1]);
    pts.push_back(pts[1]);
    const int n = static_cast<int>(pts.size());
    const auto sums = power_sums(pts, n);
    const auto again = power_sums(newton_reconstruct(sums).points, n);
    for (int k = 1; k <= n; ++k) {
      CHECK(std::abs(again[k] - sums[k]) <= 1e-8 * std::max(1.0, std::abs(sums[k])));
    }
  }
}

TEST_CASE("reconstruction rejects a non-integer or short sum vector") {
  CHECK_THROWS_AS(newton_reconstruct(std::vector<std::complex<double>>{2.5, 1.0, 1.0}), ConfigError);
  CHECK_THROWS_AS(newton_reconstruct(std::vector<std::complex<double>>{-1.0}), ConfigError);
  CHECK_THROWS_AS(newton_reconstruct(std::vector<std::complex<double>>{3.0, 1.0}), ConfigError);
}

TEST_CASE("Hungarian assignment matches brute force") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 6;
    std::vector<double> cost(n * n);
    for (auto& c : cost) {
      c = u(rng);
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = INFINITY;
    do {
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        total += cost[i * n + perm[i]];
      }
      best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    const auto a = min_cost_assignment(cost, n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      total += cost[i * n + a[i]];
    }
    CHECK(total == doctest::Approx(best).epsilon(1e-12));
  }
  CHECK_THROWS_AS(matching_distance(Points{1.0}, Points{1.0, 2.0}), std::invalid_argument);
  CHECK(matching_distance(Points{}, Points{}) == 0.0);
}

TEST_CASE("recovery from outside zeros") {
  RigidityConfig cfg;
  cfg.k_max = 1;
  cfg.eta = 0.5;
  cfg.trials = 200;
  cfg.seed = 3;
  cfg.threads = 4;
  const RecoveryReport rep = rigidity_experiment(cfg);
  CHECK(rep.failed == 0);
  REQUIRE(rep.trials.size() == 200);
  for (const TrialRecord& t : rep.trials) {
    // S_hat - S = E int Phi dZ - int Phi dZ holds exactly up to rounding
    CHECK(t.identity_error < 1e-10);
    CHECK(t.true_count == static_cast<int>(t.true_points.size()));
    if (t.recovered_count == t.true_count) {
      CHECK(std::isfinite(t.matching_distance));
    } else {
      CHECK(std::isnan(t.matching_distance));
    }
  }
  CHECK(rep.count_success_rate > 0.95);
  REQUIRE(rep.mean_error.size() == 2);
  for (int k = 0; k <= 1; ++k) {
    CAPTURE(k);
    CHECK(std::abs(rep.mean_error[k]) <= 4.0 * rep.mean_error_stderr[k]);
  }
}

TEST_CASE("recovery error shrinks as eta decreases") {
  double previous = INFINITY;
  for (double eta : {1.0, 0.5, 1.0 / 3.0}) {
    RigidityConfig cfg;
    cfg.k_max = 1;
    cfg.eta = eta;
    cfg.trials = 100;
    cfg.seed = 10;
    cfg.threads = 4;
    const RecoveryReport rep = rigidity_experiment(cfg);
    CAPTURE(eta);
    CHECK(rep.failed == 0);
    CHECK(rep.rms_error[0] < previous);
    previous = rep.rms_error[0];
  }
}

TEST_CASE("experiments are reproducible across thread counts") {
  RigidityConfig cfg;
  cfg.trials = 24;
  cfg.eta = 1.0;
  cfg.threads = 1;
  const RecoveryReport a = rigidity_experiment(cfg);
  cfg.threads = 5;
  const RecoveryReport b = rigidity_experiment(cfg);
  REQUIRE(a.trials.size() == b.trials.size());
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    CHECK(a.trials[i].seed == b.trials[i].seed);
    CHECK(a.trials[i].recovered_sums == b.trials[i].recovered_sums);
    CHECK(a.trials[i].reconstructed == b.trials[i].reconstructed);
  }
  CHECK(a.rms_error == b.rms_error);
}
