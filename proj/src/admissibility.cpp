#include "gaf/admissibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gaf/quadrature.hpp"

namespace gaf {

double estimate_delta(const KernelSpec& spec, double r) {
  return std::min(std::numbers::pi / 2.0, std::pow(hayman_b(spec, r), -0.4));
}

ArcCheck check_major_arc(const KernelSpec& spec, double r, double delta, int grid) {
  if (!(delta > 0.0 && delta < std::numbers::pi)) {
    throw ConfigError("check_major_arc needs delta in (0, pi)");
  }
  if (grid < 3) {
    throw ConfigError("check_major_arc needs at least 3 grid points");
  }
  const KernelMoments m = kernel_moments(spec, r);
  ArcCheck out;
  for (int j = 0; j < grid; ++j) {
    const double theta = -delta + 2.0 * delta * j / (grid - 1);
    const ComplexKernelValue v = log_kernel(spec, r, theta);
    const double re = v.value.log_mod - (m.log_g - 0.5 * theta * theta * m.b);
    const double im = wrap_angle(v.value.arg - theta * m.a);
    double err = std::hypot(re, im);
    if (v.precision_loss) {
      out.precision_loss = true;
      err = std::max(err, v.error_bound * std::exp(m.log_g - v.value.log_mod));
    }
    out.value = std::max(out.value, err);
  }
  return out;
}

MinorArcCheck check_minor_arc(const KernelSpec& spec, double r, double delta, int grid) {
  if (!(delta > 0.0 && delta < std::numbers::pi)) {
    throw ConfigError("check_minor_arc needs delta in (0, pi)");
  }
  const KernelMoments m = kernel_moments(spec, r);
  MinorArcCheck out;
  double sup = 0.0;
  for (int j = 0; j < grid; ++j) {
    const double theta = delta + (std::numbers::pi - delta) * j / (grid - 1);
    const ComplexKernelValue v = log_kernel(spec, r, theta);
    double rel = std::exp(v.value.log_mod - m.log_g);
    if (v.precision_loss) {
      out.precision_loss = true;
      rel += v.error_bound;
    }
    sup = std::max(sup, rel);
  }
  out.ratio = sup * std::sqrt(m.b);
  out.ratio_quarter = sup * std::pow(m.b, 0.25);
  return out;
}

double verify_claim1(const KernelSpec& spec, double R) {
  const KernelMoments m = kernel_moments(spec, R);
  const double width = 1.0 / std::sqrt(m.b);
  // integrand exp(2 log|G| - 2 log G(R)) stays in [0, 1]
  auto f = [&](double theta) { return std::exp(2.0 * (log_kernel(spec, R, theta).value.log_mod - m.log_g)); };
  const int panels = static_cast<int>(std::clamp(4.0 * std::numbers::pi / width, 64.0, 4096.0));
  const double integral = integrate_simpson(f, 0.0, std::numbers::pi, 1e-10 * width, "verify_claim1", panels);
  // A(R) = 4 pi int_0^pi, so A sqrt(b) / (4 pi^2 G^2) = sqrt(b)/pi * integral
  return std::sqrt(m.b) / std::numbers::pi * integral;
}

Claim2Check verify_claim2(const KernelSpec& spec, double L, double r, double s) {
  if (!(r > 0.0 && r <= s) || !(L > 0.0)) {
    throw ConfigError("verify_claim2 needs 0 < r <= s and L > 0");
  }
  const double lo = L * L * r * r;
  const double hi = L * L * s * s;
  const double g_rs = log_kernel(spec, L * L * r * s);
  const double g_rr = log_kernel(spec, lo);
  const double g_ss = log_kernel(spec, hi);
  Claim2Check out;
  out.scale = std::max({1.0, std::abs(g_rs), std::abs(g_rr), std::abs(g_ss)});
  if (r == s) {
    return out;
  }
  double min_b = std::min(hayman_b(spec, lo), hayman_b(spec, hi));
  for (int j = 0; j < 64; ++j) {
    min_b = std::min(min_b, hayman_b(spec, lo * std::pow(hi / lo, (j + 0.5) / 64.0)));
  }
  const double log_ratio = std::log(s / r);
  out.slack = -log_ratio * log_ratio * min_b - (2.0 * g_rs - g_rr - g_ss);
  return out;
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  }
  return out;
}

ConvexityCheck check_log_convexity(const KernelSpec& spec, std::span<const double> t_grid) {
  if (t_grid.size() < 64) {
    throw ConfigError("check_log_convexity needs at least 64 grid points");
  }
  const double h = t_grid[1] - t_grid[0];
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(std::abs(t_grid[i] - t_grid[i - 1] - h) <= 1e-9 * std::abs(h)) || !(h > 0.0)) {
      throw ConfigError("check_log_convexity needs a uniform increasing grid");
    }
  }
  std::vector<double> values;
  values.reserve(t_grid.size());
  ConvexityCheck out;
  for (double t : t_grid) {
    values.push_back(log_kernel(spec, std::exp(t)));
    out.scale = std::max(out.scale, std::abs(values.back()));
  }
  out.min_second_difference = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    out.min_second_difference = std::min(out.min_second_difference, values[i - 1] - 2.0 * values[i] + values[i + 1]);
  }
  return out;
}

AdmissibilityReport admissibility_report(const KernelSpec& spec, std::span<const double> r_grid,
                                         std::span<const double> t_grid) {
  AdmissibilityReport out;
  for (double r : r_grid) {
    AdmissibilityRow row;
    row.r = r;
    const KernelMoments m = kernel_moments(spec, r);
    row.a = m.a;
    row.b = m.b;
    row.delta_hat = estimate_delta(spec, r);
    const ArcCheck major = check_major_arc(spec, r, row.delta_hat);
    const MinorArcCheck minor = check_minor_arc(spec, r, row.delta_hat);
    row.major_arc_err = major.value;
    row.minor_arc_ratio = minor.ratio;
    row.minor_arc_ratio_quarter = minor.ratio_quarter;
    row.claim1_ratio = verify_claim1(spec, r);
    row.precision_loss = major.precision_loss || minor.precision_loss;
    out.rows.push_back(row);
  }
  const ConvexityCheck convexity = check_log_convexity(spec, t_grid);
  out.convexity_min = convexity.min_second_difference;
  out.convexity_scale = convexity.scale;
  bool increasing = !out.rows.empty();
  for (std::size_t i = 1; i < out.rows.size(); ++i) {
    increasing = increasing && out.rows[i].b > out.rows[i - 1].b;
  }
  out.b_divergent = increasing && out.rows.size() >= 2 && out.rows.back().b >= 2.0 * out.rows.front().b;
  return out;
}

}  // namespace gaf
