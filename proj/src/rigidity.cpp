#include "gaf/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gaf/assignment.hpp"
#include "gaf/parallel.hpp"
#include "gaf/philox.hpp"
#include "gaf/polynomial.hpp"

namespace gaf {

std::vector<std::complex<double>> power_sums(std::span<const std::complex<double>> points, int k_max) {
  std::vector<std::complex<double>> sums(static_cast<std::size_t>(k_max) + 1, 0.0);
  for (const auto& z : points) {
    std::complex<double> power = 1.0;
    for (auto& s : sums) {
      s += power;
      power *= z;
    }
  }
  return sums;
}

std::complex<double> recover_power_sum(std::complex<double> expected, const ZeroSet& zeros, const TestFunction& tf) {
  if (zeros.disk_radius < tf.support_radius() * (1.0 - 1e-12)) {
    throw SupportExceedsValidity("recover_power_sum", "zero set radius " + std::to_string(zeros.disk_radius) +
                                                          " < support radius " +
                                                          std::to_string(tf.support_radius()));
  }
  std::complex<double> outside = 0.0;
  for (const auto& z : zeros.points) {
    if (std::abs(z) > tf.L()) {
      outside += tf.value(z);
    }
  }
  return expected - outside;
}

std::complex<double> recover_power_sum(const KernelSpec& spec, const ZeroSet& zeros, int k, double eta, double L) {
  const TestFunction tf(k, eta, L);
  return recover_power_sum(expected_statistic(spec, tf), zeros, tf);
}

namespace {

// Largest |S_k(points) - S_k| / max(1, |S_k|) over k = 1..N.
double power_sum_residual(std::span<const std::complex<double>> points,
                          std::span<const std::complex<double>> sums) {
  const std::vector<std::complex<double>> again = power_sums(points, static_cast<int>(points.size()));
  double worst = 0.0;
  for (std::size_t k = 1; k < again.size(); ++k) {
    worst = std::max(worst, std::abs(again[k] - sums[k]) / std::max(1.0, std::abs(sums[k])));
  }
  return worst;
}

// Newton steps on the (order)-th derivative of sum_k coeffs[k] z^k.
std::complex<double> polish_on_derivative(std::span<const std::complex<double>> coeffs, std::size_t order,
                                          std::complex<double> z) {
  std::vector<std::complex<double>> d(coeffs.begin(), coeffs.end());
  for (std::size_t o = 0; o < order && d.size() > 1; ++o) {
    for (std::size_t k = 1; k < d.size(); ++k) {
      d[k - 1] = static_cast<double>(k) * d[k];
    }
    d.pop_back();
  }
  for (int it = 0; it < 8; ++it) {
    std::complex<double> p = 0.0;
    std::complex<double> dp = 0.0;
    for (std::size_t k = d.size(); k-- > 0;) {
      dp = dp * z + p;
      p = p * z + d[k];
    }
    if (dp == std::complex<double>{}) {
      break;
    }
    const std::complex<double> step = p / dp;
    z -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) {
      break;
    }
  }
  return z;
}

// A root of multiplicity m comes back from Aberth as m points scattered over a
// disk of radius about (noise / |p^{(m)}|)^{1/m}. It is a simple root of
// p^{(m-1)}, so the cluster is replaced by Newton on that derivative started
// from the centroid, kept only when it lowers the power-sum residual.
std::vector<std::complex<double>> merge_clusters(std::vector<std::complex<double>> roots,
                                                 std::span<const std::complex<double>> coeffs,
                                                 std::span<const std::complex<double>> sums) {
  const std::size_t n = roots.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) {
    parent[i] = i;
  }
  const auto find = [&](std::size_t i) {
    while (parent[i] != i) {
      i = parent[i] = parent[parent[i]];
    }
    return i;
  };
  bool any = false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double scale = std::max({1.0, std::abs(roots[i]), std::abs(roots[j])});
      if (std::abs(roots[i] - roots[j]) <= 1e-4 * scale) {
        parent[find(i)] = find(j);
        any = true;
      }
    }
  }
  if (!any) {
    return roots;
  }
  std::vector<std::complex<double>> total(n, 0.0);
  std::vector<double> size(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    total[find(i)] += roots[i];
    size[find(i)] += 1.0;
  }
  std::vector<std::complex<double>> centre(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (find(i) == i) {
      const auto multiplicity = static_cast<std::size_t>(size[i]);
      centre[i] = total[i] / size[i];
      if (multiplicity > 1) {
        centre[i] = polish_on_derivative(coeffs, multiplicity - 1, centre[i]);
      }
    }
  }
  std::vector<std::complex<double>> merged(n);
  for (std::size_t i = 0; i < n; ++i) {
    merged[i] = centre[find(i)];
  }
  return power_sum_residual(merged, sums) < power_sum_residual(roots, sums) ? merged : roots;
}

}  // namespace

Reconstruction newton_reconstruct(std::span<const std::complex<double>> sums) {
  if (sums.empty()) {
    throw ConfigError("newton_reconstruct needs S_0");
  }
  const double n_real = sums[0].real();
  if (!(n_real >= 0.0) || n_real != std::floor(n_real) || sums[0].imag() != 0.0) {
    throw ConfigError("newton_reconstruct needs S_0 to be a nonnegative integer");
  }
  const auto n = static_cast<std::size_t>(n_real);
  if (sums.size() < n + 1) {
    throw ConfigError("newton_reconstruct needs S_1..S_N");
  }
  Reconstruction out;
  if (n == 0) {
    return out;
  }
  double max_sum = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    max_sum = std::max(max_sum, std::abs(sums[i]));
  }
  std::vector<std::complex<double>> e(n + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t m = 1; m <= n; ++m) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = 1; i <= m; ++i) {
      const double sign = (i % 2 == 1) ? 1.0 : -1.0;
      acc += sign * e[m - i] * sums[i];
    }
    e[m] = acc / static_cast<double>(m);
    out.ill_conditioned = out.ill_conditioned || std::abs(e[m]) > 1e12 * std::max(max_sum, 1.0);
  }
  // coefficient of z^l is (-1)^{N-l} e_{N-l}
  std::vector<std::complex<double>> coeffs(n + 1);
  for (std::size_t l = 0; l <= n; ++l) {
    const double sign = ((n - l) % 2 == 0) ? 1.0 : -1.0;
    coeffs[l] = sign * e[n - l];
  }
  out.points = merge_clusters(polynomial_roots(coeffs).roots, coeffs, sums);
  return out;
}

namespace {

double median(std::vector<double> v) {
  if (v.empty()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  if (v.size() % 2 == 1) {
    return v[mid];
  }
  const double upper = v[mid];
  return 0.5 * (upper + *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid)));
}

TrialRecord run_trial(const RigidityConfig& cfg, const std::shared_ptr<const TruncationPlan>& plan,
                      const std::vector<TestFunction>& tfs, std::vector<std::complex<double>>& expected,
                      std::size_t index) {
  TrialRecord rec;
  rec.index = index;
  rec.seed = derive_seed(cfg.seed, index);
  const double L = cfg.d_radius;
  const double support = tfs.front().support_radius();
  try {
    const SampledFunction fn(plan, rec.seed);
    const ZeroSet zeros = zeros_in_disk(fn, support);
    for (const auto& z : zeros.points) {
      if (std::abs(z) <= L) {
        rec.true_points.push_back(z);
      }
    }
    rec.true_count = static_cast<int>(rec.true_points.size());
    rec.true_sums = power_sums(rec.true_points, cfg.k_max);
    for (std::size_t k = 0; k < tfs.size() && static_cast<int>(k) <= cfg.k_max; ++k) {
      rec.recovered_sums.push_back(recover_power_sum(expected[k], zeros, tfs[k]));
    }
    const double s0 = rec.recovered_sums[0].real();
    const double rounded = std::max(0.0, std::round(s0));
    rec.count_rounding = std::abs(s0 - std::round(s0));
    rec.recovered_count = static_cast<int>(rounded);
    // identity: S_hat - S = E int Phi - int Phi dZ
    for (int k = 0; k <= cfg.k_max; ++k) {
      const auto ks = static_cast<std::size_t>(k);
      const std::complex<double> lhs = rec.recovered_sums[ks] - rec.true_sums[ks];
      const std::complex<double> rhs = expected[ks] - linear_statistic(zeros, tfs[ks]);
      rec.identity_error = std::max(rec.identity_error, std::abs(lhs - rhs));
    }
    // reconstruction needs S_1..S_n for the rounded count n
    std::vector<std::complex<double>> sums{rounded};
    for (int k = 1; k <= rec.recovered_count; ++k) {
      const auto ks = static_cast<std::size_t>(k);
      if (ks < rec.recovered_sums.size()) {
        sums.push_back(rec.recovered_sums[ks]);
      } else {
        const TestFunction tf(k, cfg.eta, L);
        sums.push_back(recover_power_sum(0.0, zeros, tf));  // E int Phi = 0 for k >= 1
      }
    }
    const Reconstruction rc = newton_reconstruct(sums);
    rec.reconstructed = rc.points;
    rec.ill_conditioned = rc.ill_conditioned;
    rec.matching_distance = rec.recovered_count == rec.true_count
                                ? matching_distance(rec.true_points, rec.reconstructed)
                                : std::numeric_limits<double>::quiet_NaN();
  } catch (const NumericalError& e) {
    rec.failed = true;
    rec.failure = e.what();
  }
  return rec;
}

}  // namespace

RecoveryReport rigidity_experiment(const RigidityConfig& cfg) {
  if (cfg.k_max < 0) {
    throw ConfigError("k_max must be >= 0");
  }
  if (cfg.trials < 1) {
    throw ConfigError("rigidity needs at least one trial");
  }
  std::vector<TestFunction> tfs;
  for (int k = 0; k <= cfg.k_max; ++k) {
    tfs.emplace_back(k, cfg.eta, cfg.d_radius);
  }
  // the sampler's truncation is the binding limit at large support, so it fails first
  const auto plan = make_plan(cfg.spec, tfs.front().support_radius(), cfg.tail_tol);
  std::vector<std::complex<double>> expected;
  for (const TestFunction& tf : tfs) {
    expected.push_back(expected_statistic(cfg.spec, tf));
  }

  RecoveryReport report;
  report.config = cfg;
  report.trials.resize(cfg.trials);
  parallel_for(cfg.trials, cfg.threads,
               [&](std::size_t i) { report.trials[i] = run_trial(cfg, plan, tfs, expected, i); });

  const auto kcount = static_cast<std::size_t>(cfg.k_max) + 1;
  std::vector<double> sq(kcount, 0.0);
  std::vector<std::complex<double>> sum(kcount, 0.0);
  std::vector<double> matched;
  std::size_t ok = 0;
  std::size_t count_hits = 0;
  for (const auto& t : report.trials) {
    if (t.failed) {
      ++report.failed;
      continue;
    }
    ++ok;
    count_hits += t.recovered_count == t.true_count ? 1 : 0;
    for (std::size_t k = 0; k < kcount; ++k) {
      const std::complex<double> d = t.recovered_sums[k] - t.true_sums[k];
      sq[k] += std::norm(d);
      sum[k] += d;
    }
    if (t.recovered_count == t.true_count) {
      matched.push_back(t.matching_distance);
    }
  }
  report.rms_error.assign(kcount, std::numeric_limits<double>::quiet_NaN());
  report.mean_error.assign(kcount, 0.0);
  report.mean_error_stderr.assign(kcount, std::numeric_limits<double>::quiet_NaN());
  if (ok > 0) {
    const double n = static_cast<double>(ok);
    report.count_success_rate = static_cast<double>(count_hits) / n;
    for (std::size_t k = 0; k < kcount; ++k) {
      report.rms_error[k] = std::sqrt(sq[k] / n);
      report.mean_error[k] = sum[k] / n;
      if (ok > 1) {
        const double var = (sq[k] - n * std::norm(report.mean_error[k])) / (n - 1.0);
        report.mean_error_stderr[k] = std::sqrt(std::max(var, 0.0) / n);
      }
    }
  }
  report.matched_trials = matched.size();
  if (!matched.empty()) {
    double total = 0.0;
    for (double d : matched) {
      total += d;
    }
    report.mean_matching_distance = total / static_cast<double>(matched.size());
    report.median_matching_distance = median(matched);
  } else {
    report.mean_matching_distance = std::numeric_limits<double>::quiet_NaN();
    report.median_matching_distance = std::numeric_limits<double>::quiet_NaN();
  }
  return report;
}

}  // namespace gaf
