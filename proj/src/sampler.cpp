#include "gaf/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gaf/philox.hpp"

namespace gaf {

namespace {

double decay_for(double tail_tol) { return std::max(36.85, -std::log(tail_tol) + 9.2); }

void check_tail_tol(double tail_tol) {
  if (!(tail_tol > 0.0 && tail_tol <= 1e-6)) {
    throw ConfigError("tail_tol must lie in (0, 1e-6]");
  }
}

std::size_t first_nonzero(const KernelSpec& spec) {
  const std::size_t limit = std::min(spec.coefficient_count(), kMaxSeriesTerms);
  for (std::size_t n = 0; n < limit; ++n) {
    if (spec.log_sq_coeff(n) != kNegInf) {
      return n;
    }
  }
  throw NonConvergent("truncation_degree", spec.name() + ": no nonzero coefficient");
}

// suffix[n] = log sum_{m >= n} exp(terms[m]); suffix[size] = -inf.
std::vector<double> log_suffix_sums(const std::vector<double>& terms) {
  std::vector<double> suffix(terms.size() + 1, kNegInf);
  for (std::size_t n = terms.size(); n-- > 0;) {
    suffix[n] = log_add(suffix[n + 1], terms[n]);
  }
  return suffix;
}

}  // namespace

std::size_t truncation_degree(const KernelSpec& spec, double radius, double tail_tol) {
  check_tail_tol(tail_tol);
  if (!(radius >= 0.0)) {
    throw ConfigError("truncation radius must be nonnegative");
  }
  if (radius == 0.0) {
    return first_nonzero(spec);
  }
  const std::vector<double> terms = log_series_terms(spec, 2.0 * std::log(radius), decay_for(tail_tol));
  const std::vector<double> suffix = log_suffix_sums(terms);
  const double limit = std::log(tail_tol) + suffix[0];
  for (std::size_t n = 0; n < terms.size(); ++n) {
    if (suffix[n + 1] <= limit) {
      return n;
    }
  }
  return terms.size() - 1;
}

double log_relative_tail(const KernelSpec& spec, std::size_t degree, double radius) {
  if (radius == 0.0) {
    return kNegInf;
  }
  const std::vector<double> terms = log_series_terms(spec, 2.0 * std::log(radius), decay_for(1e-300));
  if (degree + 1 >= terms.size()) {
    return kNegInf;
  }
  const std::vector<double> suffix = log_suffix_sums(terms);
  return suffix[degree + 1] - suffix[0];
}

namespace {

// Largest radius >= lo at which `degree` still meets the tail tolerance.
double valid_radius_for(const KernelSpec& spec, std::size_t degree, double lo, double tail_tol) {
  const double log_tol = std::log(tail_tol);
  auto fits = [&](double r) {
    try {
      return log_relative_tail(spec, degree, r) <= log_tol;
    } catch (const NonConvergent&) {
      return false;
    }
  };
  if (lo <= 0.0) {
    lo = 1e-3;
    while (!fits(lo)) {
      lo *= 0.5;
      if (lo < 1e-300) {
        throw NonConvergent("valid_radius", spec.name() + ": no radius meets the tail tolerance");
      }
    }
  }
  double hi = 2.0 * lo;
  int doublings = 0;
  while (fits(hi)) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > 64) {
      throw NonConvergent("valid_radius", spec.name() + ": truncation valid on an unbounded disk");
    }
  }
  // bisection on log r
  for (int it = 0; it < 200 && hi / lo > 1.0 + 1e-12; ++it) {
    const double mid = std::sqrt(lo * hi);
    (fits(mid) ? lo : hi) = mid;
  }
  return lo;
}

std::shared_ptr<const TruncationPlan> plan_for(const KernelSpec& spec, std::size_t degree, double radius,
                                               double tail_tol) {
  auto plan = std::make_shared<TruncationPlan>(TruncationPlan{.spec = spec,
                                                              .degree = degree,
                                                              .tail_tol = tail_tol,
                                                              .valid_radius = 0.0,
                                                              .log_scaled_modulus = {},
                                                              .log_scale = 0.0,
                                                              .log_abs_coeff = {}});
  plan->valid_radius = valid_radius_for(spec, degree, radius, tail_tol);
  const double log_rho = std::log(plan->valid_radius);
  plan->log_scaled_modulus.resize(degree + 1);
  plan->log_abs_coeff.resize(degree + 1);
  double top = kNegInf;
  for (std::size_t n = 0; n <= degree; ++n) {
    const double c = spec.log_sq_coeff(n);
    plan->log_abs_coeff[n] = 0.5 * c;
    const double t = c == kNegInf ? kNegInf : 0.5 * c + static_cast<double>(n) * log_rho;
    plan->log_scaled_modulus[n] = t;
    top = std::max(top, t);
  }
  plan->log_scale = top;
  for (double& t : plan->log_scaled_modulus) {
    t -= top;
    if (t < kFlushLog) {
      t = kNegInf;
    }
  }
  return plan;
}

}  // namespace

double TruncationPlan::log_max_term(double radius) const {
  const double log_r = std::log(radius);
  double top = kNegInf;
  for (std::size_t n = 0; n < log_abs_coeff.size(); ++n) {
    if (log_abs_coeff[n] != kNegInf) {
      top = std::max(top, log_abs_coeff[n] + static_cast<double>(n) * log_r);
    }
  }
  return top;
}

std::shared_ptr<const TruncationPlan> make_plan(const KernelSpec& spec, double radius, double tail_tol) {
  check_tail_tol(tail_tol);
  if (!(radius > 0.0)) {
    throw ConfigError("sampling radius must be positive");
  }
  const std::size_t degree = std::max<std::size_t>(1, truncation_degree(spec, radius, tail_tol));
  return plan_for(spec, degree, radius, tail_tol);
}

std::vector<std::complex<double>> gaussian_draws(std::uint64_t seed, std::size_t count, std::uint64_t stream) {
  const PhiloxKey key{seed, mix64(seed)};
  std::vector<std::complex<double>> out(count);
  for (std::size_t n = 0; n < count; ++n) {
    const PhiloxCounter bits = philox4x64({n, stream, 0, 0}, key);
    // Box-Muller; the 1/sqrt(2) of each component folds into the radius
    const double radius = std::sqrt(-std::log(philox_uniform(bits[0])));
    const double angle = 2.0 * std::numbers::pi * philox_uniform(bits[1]);
    out[n] = {radius * std::cos(angle), radius * std::sin(angle)};
  }
  return out;
}

SampledFunction::SampledFunction(std::shared_ptr<const TruncationPlan> plan, std::uint64_t seed)
    : plan_(std::move(plan)), seed_(seed), xi_(gaussian_draws(seed, plan_->degree + 1)) {
  scaled_.resize(xi_.size());
  for (std::size_t n = 0; n < xi_.size(); ++n) {
    const double t = plan_->log_scaled_modulus[n];
    scaled_[n] = t == kNegInf ? std::complex<double>{} : xi_[n] * std::exp(t);
    flushed_low_ = flushed_low_ || (t == kNegInf && plan_->log_abs_coeff[n] != kNegInf);
  }
}

ScaledPolynomial SampledFunction::coefficients_at(double radius) const {
  if (!(radius > 0.0)) {
    throw ConfigError("coefficients_at needs a positive radius");
  }
  ScaledPolynomial out;
  out.radius = radius;
  // centre the kept range [-700, 0] on 0 so that no partial sum nears under- or overflow
  out.log_scale = plan_->log_max_term(radius) + kFlushLog / 2.0;
  const double log_r = std::log(radius);
  out.coeffs.assign(xi_.size(), std::complex<double>{});
  for (std::size_t n = 0; n < xi_.size(); ++n) {
    const double c = plan_->log_abs_coeff[n];
    if (c == kNegInf) {
      continue;
    }
    const double t = c + static_cast<double>(n) * log_r - out.log_scale;
    if (t >= kFlushLog / 2.0) {
      out.coeffs[n] = xi_[n] * std::exp(t);
    }
  }
  return out;
}

SampledFunction sample(const KernelSpec& spec, std::size_t degree, std::uint64_t seed, double tail_tol) {
  check_tail_tol(tail_tol);
  if (degree < 1) {
    throw ConfigError("sample needs degree >= 1");
  }
  return SampledFunction(plan_for(spec, degree, 0.0, tail_tol), seed);
}

namespace {

std::complex<double> horner(const std::vector<std::complex<double>>& c, std::complex<double> w) {
  std::complex<double> p = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    p = p * w + c[k];
  }
  return p;
}

std::complex<double> horner_d1(const std::vector<std::complex<double>>& c, std::complex<double> w) {
  std::complex<double> d = 0.0;
  for (std::size_t k = c.size() - 1; k >= 1; --k) {
    d = d * w + static_cast<double>(k) * c[k];
  }
  return d;
}

}  // namespace

bool SampledFunction::needs_local_scale(std::complex<double> z) const {
  return flushed_low_ && std::abs(z) < valid_radius() && z != std::complex<double>{};
}

ScaledValue SampledFunction::evaluate_scaled(std::complex<double> z) const {
  if (z == std::complex<double>{}) {
    const double c = plan_->log_abs_coeff[0];
    return {c == kNegInf ? std::complex<double>{} : xi_[0], c == kNegInf ? 0.0 : c};
  }
  if (needs_local_scale(z)) {
    const ScaledPolynomial local = coefficients_at(std::abs(z));
    return {horner(local.coeffs, z / local.radius), local.log_scale};
  }
  const std::complex<double> w = z / valid_radius();
  const auto& c = scaled_;
  const std::size_t n = c.size() - 1;
  if (std::abs(w) <= 1.0) {
    return {horner(c, w), plan_->log_scale};
  }
  // p(w) = w^n q(1/w) with q the reversed polynomial
  const std::complex<double> y = 1.0 / w;
  std::complex<double> q = c[0];
  for (std::size_t k = 1; k <= n; ++k) {
    q = q * y + c[k];
  }
  const double nd = static_cast<double>(n);
  return {q * std::polar(1.0, nd * std::arg(w)), plan_->log_scale + nd * std::log(std::abs(w))};
}

ScaledValue SampledFunction::evaluate_d1_scaled(std::complex<double> z) const {
  if (needs_local_scale(z)) {
    const ScaledPolynomial local = coefficients_at(std::abs(z));
    return {horner_d1(local.coeffs, z / local.radius), local.log_scale - std::log(local.radius)};
  }
  if (z == std::complex<double>{} && flushed_low_) {
    const double c = plan_->log_abs_coeff[1];
    return {c == kNegInf ? std::complex<double>{} : xi_[1], c == kNegInf ? 0.0 : c};
  }
  const double rho = valid_radius();
  const std::complex<double> w = z / rho;
  const auto& c = scaled_;
  const std::size_t n = c.size() - 1;
  const double base = plan_->log_scale - std::log(rho);
  if (std::abs(w) <= 1.0) {
    return {horner_d1(c, w), base};
  }
  // p'(w) = w^{n-1} (n q(y) - y q'(y))
  const std::complex<double> y = 1.0 / w;
  std::complex<double> q = c[0];
  std::complex<double> dq = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    dq = dq * y + q;
    q = q * y + c[k];
  }
  const double nd = static_cast<double>(n);
  return {(nd * q - y * dq) * std::polar(1.0, (nd - 1.0) * std::arg(w)),
          base + (nd - 1.0) * std::log(std::abs(w))};
}

std::complex<double> SampledFunction::evaluate(std::complex<double> z) const {
  const ScaledValue v = evaluate_scaled(z);
  return v.mantissa * std::exp(v.log_scale);
}

std::complex<double> SampledFunction::evaluate_d1(std::complex<double> z) const {
  const ScaledValue v = evaluate_d1_scaled(z);
  return v.mantissa * std::exp(v.log_scale);
}

}  // namespace gaf
