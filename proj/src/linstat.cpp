#include "gaf/linstat.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gaf/dilog.hpp"
#include "gaf/parallel.hpp"
#include "gaf/philox.hpp"
#include "gaf/quadrature.hpp"

namespace gaf {

namespace {

double smoothstep(double t) { return t * t * t * (10.0 + t * (-15.0 + 6.0 * t)); }
double smoothstep_d1(double t) { return 30.0 * t * t * (t - 1.0) * (t - 1.0); }
double smoothstep_d2(double t) { return 60.0 * t * (2.0 * t - 1.0) * (t - 1.0); }

// 2k s'(t) + eta s''(t); D(r) = -eta r^{k-2} times this.
double radial_profile(int k, double eta, double t) {
  return 2.0 * k * smoothstep_d1(t) + eta * smoothstep_d2(t);
}

constexpr double kOuterRelTol = 1e-3;
constexpr int kMaxOuterPanels = 256;

// 2 int_0^1 dt1 int_0^{t1} F(t1, t2) dt2 for a symmetric F given as
// outer(t1) * inner(t1, t2) * outer(t2).
// Inner integrals get an absolute floor of 1e-9 of the whole integral's size,
// estimated on a 12 x 12 midpoint grid, so columns that nearly vanish are not
// refined into the noise of the kernel.
template <typename Weight, typename Kernel>
double symmetric_square(const Weight& weight, const Kernel& kernel, const std::string& operation) {
  constexpr int kScaleGrid = 12;
  double scale = 0.0;
  for (int i = 0; i < kScaleGrid; ++i) {
    const double t1 = (i + 0.5) / kScaleGrid;
    const double w1 = weight(t1);
    for (int j = 0; j <= i && w1 != 0.0; ++j) {
      const double t2 = (j + 0.5) / kScaleGrid;
      scale += (j == i ? 1.0 : 2.0) * std::abs(w1 * weight(t2) * kernel(t1, t2));
    }
  }
  scale /= kScaleGrid * kScaleGrid;
  const double floor = std::max(1e-9 * scale, 1e-300);
  auto row = [&](double t1) {
    const double w1 = weight(t1);
    if (w1 == 0.0) {
      return 0.0;
    }
    auto column = [&](double t2) { return weight(t2) * kernel(t1, t2); };
    return w1 * integrate_gk(column, 0.0, t1, 1e-6, floor / std::abs(w1), operation, 12);
  };
  double previous = 2.0 * integrate_gl(row, 0.0, 1.0, 2);
  for (int panels = 4; panels <= kMaxOuterPanels; panels *= 2) {
    const double current = 2.0 * integrate_gl(row, 0.0, 1.0, panels);
    if (std::abs(current - previous) <= kOuterRelTol * std::abs(current)) {
      return current;
    }
    previous = current;
  }
  throw QuadratureFailure(operation, "outer Gauss-Legendre refinement did not settle to 1e-3");
}

// theta-integral of weight(theta) g(x(theta)), x = |G(rs e^{i theta})|^2 / (G(r^2) G(s^2)),
// with a breakpoint at the Gaussian width 1/sqrt(b(rs)) of the peak at theta = 0.
template <typename Integrand>
double angular_integral(const KernelSpec& spec, double r, double s, const Integrand& integrand,
                        const std::string& operation) {
  const double log_norm = log_kernel(spec, r * r) + log_kernel(spec, s * s);
  const double rs = r * s;
  auto x_of = [&](double theta) {
    const double log_mod = log_kernel(spec, rs, theta).value.log_mod;
    const double x = std::exp(2.0 * log_mod - log_norm);
    if (x > 1.0 + 1e-10) {
      throw KernelBoundViolated(operation, spec.name() + ": |J|^2 = " + std::to_string(x));
    }
    return std::min(x, 1.0);
  };
  auto f = [&](double theta) { return integrand(theta, x_of(theta)); };
  const double width = 1.0 / std::sqrt(std::max(hayman_b(spec, rs), 1e-300));
  const double cut = std::min(std::numbers::pi / 2.0, 8.0 * width);
  // x <= 1, so an absolute floor of 1e-13 is far below the outer tolerance
  try {
    return integrate_gk(f, 0.0, cut, 1e-8, 1e-13, operation) +
           integrate_gk(f, cut, std::numbers::pi, 1e-8, 1e-13, operation);
  } catch (const QuadratureFailure& e) {
    throw QuadratureFailure(operation, std::string(e.what()) + " (angular integral at r = " + format_g(r) +
                                           ", s = " + format_g(s) + ")");
  }
}

}  // namespace

BumpValue bump(double eta, double r) {
  if (r <= 1.0) {
    return {1.0, 0.0, 0.0};
  }
  const double t = eta * std::log(r);
  if (t >= 1.0) {
    return {0.0, 0.0, 0.0};
  }
  const double s1 = smoothstep_d1(t);
  const double s2 = smoothstep_d2(t);
  return {1.0 - smoothstep(t), -s1 * eta / r, -(eta / (r * r)) * (eta * s2 - s1)};
}

TestFunction::TestFunction(int k, double eta, double L) : k_(k), eta_(eta), L_(L) {
  if (k < 0) {
    throw ConfigError("test function needs k >= 0");
  }
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw ConfigError("test function needs eta in (0, 1]");
  }
  if (!(L >= 1.0) || !std::isfinite(L)) {
    throw ConfigError("test function needs L >= 1");
  }
}

double TestFunction::support_radius() const { return L_ * std::exp(1.0 / eta_); }

std::complex<double> TestFunction::value(std::complex<double> z) const {
  const double phi = bump(eta_, std::abs(z) / L_).value;
  if (phi == 0.0) {
    return 0.0;
  }
  return std::pow(z, k_) * phi;
}

double TestFunction::radial_laplacian(double r) const {
  const double rho = r / L_;
  if (rho <= 1.0) {
    return 0.0;
  }
  const double t = eta_ * std::log(rho);
  if (t >= 1.0) {
    return 0.0;
  }
  return -eta_ * std::pow(r, k_ - 2) * radial_profile(k_, eta_, t);
}

std::complex<double> TestFunction::laplacian(std::complex<double> z) const {
  const double d = radial_laplacian(std::abs(z));
  if (d == 0.0) {
    return 0.0;
  }
  return d * std::polar(1.0, k_ * std::arg(z));
}

std::complex<double> linear_statistic(const ZeroSet& zeros, const TestFunction& tf) {
  if (zeros.disk_radius < tf.support_radius() * (1.0 - 1e-12)) {
    throw SupportExceedsValidity("linear_statistic", "zero set radius " + std::to_string(zeros.disk_radius) +
                                                         " < support radius " +
                                                         std::to_string(tf.support_radius()));
  }
  std::complex<double> sum = 0.0;
  for (const auto& z : zeros.points) {
    sum += tf.value(z);
  }
  return sum;
}

std::complex<double> expected_statistic(const KernelSpec& spec, const TestFunction& tf) {
  if (tf.k() >= 1) {
    return 0.0;
  }
  const double L = tf.L();
  const double eta = tf.eta();
  // 2 int phi a'(r^2) r dr = (2/eta) int_0^1 (1 - s(t)) b(L^2 e^{2t/eta}) dt
  auto ramp = [&](double t) { return (1.0 - smoothstep(t)) * hayman_b(spec, L * L * std::exp(2.0 * t / eta)); };
  return hayman_a(spec, L * L) + (2.0 / eta) * integrate_gk(ramp, 0.0, 1.0, 1e-12, 1e-300, "expected_statistic");
}

double expected_statistic_by_parts(const KernelSpec& spec, const TestFunction& tf) {
  const double L = tf.L();
  const double eta = tf.eta();
  auto f = [&](double t) { return hayman_a(spec, L * L * std::exp(2.0 * t / eta)) * smoothstep_d1(t); };
  return integrate_gk(f, 0.0, 1.0, 1e-12, 1e-300, "expected_statistic");
}

VarianceEstimate variance_of_samples(std::span<const std::complex<double>> values) {
  VarianceEstimate out;
  const std::size_t n = values.size();
  out.trials = n;
  if (n < 2) {
    return out;
  }
  const double nd = static_cast<double>(n);
  std::complex<double> sum = 0.0;
  for (auto v : values) {
    sum += v;
  }
  out.mean = sum / nd;
  double ss = 0.0;
  for (auto v : values) {
    ss += std::norm(v - out.mean);
  }
  out.variance = ss / (nd - 1.0);
  if (n < 3) {
    return out;
  }
  // leave-one-out: removing v shifts the mean by (mean - v)/(n-1) and the
  // centered sum of squares by -|v - mean|^2 n/(n-1)
  std::vector<double> loo(n);
  double loo_mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d2 = std::norm(values[i] - out.mean);
    loo[i] = (ss - d2 * nd / (nd - 1.0)) / (nd - 2.0);
    loo_mean += loo[i];
  }
  loo_mean /= nd;
  double spread = 0.0;
  for (double v : loo) {
    spread += (v - loo_mean) * (v - loo_mean);
  }
  out.std_error = std::sqrt((nd - 1.0) / nd * spread);
  return out;
}

StatisticSamples sample_statistics(const KernelSpec& spec, std::span<const TestFunction> tfs, std::size_t trials,
                                   std::uint64_t seed, unsigned threads, double tail_tol) {
  double radius = 0.0;
  for (const auto& tf : tfs) {
    radius = std::max(radius, tf.support_radius());
  }
  const auto plan = make_plan(spec, radius, tail_tol);
  std::vector<std::vector<std::complex<double>>> rows(trials);
  std::vector<char> ok(trials, 0);
  parallel_for(trials, threads, [&](std::size_t t) {
    try {
      const SampledFunction fn(plan, derive_seed(seed, t));
      const ZeroSet zeros = zeros_in_disk(fn, radius);
      rows[t].reserve(tfs.size());
      for (const auto& tf : tfs) {
        rows[t].push_back(linear_statistic(zeros, tf));
      }
      ok[t] = 1;
    } catch (const NumericalError&) {
      rows[t].clear();
    }
  });
  StatisticSamples out;
  for (std::size_t t = 0; t < trials; ++t) {
    if (ok[t]) {
      out.values.push_back(std::move(rows[t]));
    } else {
      ++out.failed;
    }
  }
  return out;
}

VarianceEstimate variance_mc(const KernelSpec& spec, const TestFunction& tf, std::size_t trials, std::uint64_t seed,
                             unsigned threads, double tail_tol) {
  if (trials < 100) {
    throw ConfigError("variance_mc needs at least 100 trials");
  }
  const StatisticSamples samples = sample_statistics(spec, std::span(&tf, 1), trials, seed, threads, tail_tol);
  std::vector<std::complex<double>> column;
  column.reserve(samples.values.size());
  for (const auto& row : samples.values) {
    column.push_back(row[0]);
  }
  VarianceEstimate out = variance_of_samples(column);
  out.failed = samples.failed;
  return out;
}

double variance_quadrature(const KernelSpec& spec, const TestFunction& tf) {
  const int k = tf.k();
  const double eta = tf.eta();
  const double L = tf.L();
  // r = L e^{t/eta}: D(r) r dr = -r^k P(t) dt with P = 2k s' + eta s''
  auto weight = [&](double t) { return std::exp(k * t / eta) * radial_profile(k, eta, t); };
  auto kernel = [&](double t1, double t2) {
    const double r = L * std::exp(t1 / eta);
    const double s = L * std::exp(t2 / eta);
    return angular_integral(
        spec, r, s, [&](double theta, double x) { return std::cos(k * theta) * dilog(x); }, "variance_quadrature");
  };
  const double value = symmetric_square(weight, kernel, "variance_quadrature");
  return std::pow(L, 2 * k) * value / (4.0 * std::numbers::pi);
}

double bound_integral(const KernelSpec& spec, const TestFunction& tf) {
  const int k = tf.k();
  const double eta = tf.eta();
  const double L = tf.L();
  // u = t/eta = log r: chi(r) chi(s) r s dr ds = r^k s^k du dv
  auto weight = [&](double t) { return std::exp(k * t / eta); };
  auto kernel = [&](double t1, double t2) {
    const double r = L * std::exp(t1 / eta);
    const double s = L * std::exp(t2 / eta);
    return angular_integral(spec, r, s, [](double, double x) { return x; }, "variance_bound");
  };
  return 4.0 * std::numbers::pi / (eta * eta) * symmetric_square(weight, kernel, "variance_bound");
}

double variance_bound(const KernelSpec& spec, const TestFunction& tf) {
  const double k1 = tf.k() + 1.0;
  return 32.0 / (std::numbers::pi * std::numbers::pi) * k1 * k1 * tf.eta() * tf.eta() *
         std::pow(tf.L(), 2 * tf.k()) * bound_integral(spec, tf);
}

double variance_bound_final_form(double c5, const TestFunction& tf) {
  return c5 * tf.eta() * tf.eta() / (tf.L() * tf.L());
}

}  // namespace gaf
