#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "gaf/kernel.hpp"

namespace gaf {

inline constexpr double kDefaultTailTol = 1e-12;

/// Smallest N with sum_{n>N} a_n^2 R^{2n} <= tail_tol * G(R^2). At R = 0 this is the
/// index of the first nonzero coefficient.
std::size_t truncation_degree(const KernelSpec& spec, double radius, double tail_tol = kDefaultTailTol);

/// log(sum_{n>N} a_n^2 R^{2n} / G(R^2)); -inf when the tail is empty.
double log_relative_tail(const KernelSpec& spec, std::size_t degree, double radius);

/// Everything about a truncation that does not depend on the Gaussian draws:
/// shared by all samples of one experiment.
struct TruncationPlan {
  KernelSpec spec;
  std::size_t degree = 0;
  double tail_tol = kDefaultTailTol;
  /// Largest radius at which the degree still meets tail_tol; >= the requested radius.
  double valid_radius = 0.0;
  /// log|a_n| + n log(valid_radius) - log_scale, n = 0..degree; -inf for flushed terms.
  std::vector<double> log_scaled_modulus;
  /// max_n log(|a_n| valid_radius^n).
  double log_scale = 0.0;
  /// log|a_n| = log a_n^2 / 2, n = 0..degree, never flushed.
  std::vector<double> log_abs_coeff;

  /// max_n log(|a_n| radius^n), the log size of the largest term on |z| = radius.
  double log_max_term(double radius) const;
};

/// Scaled terms below exp(-700) relative to the largest are flushed to zero.
inline constexpr double kFlushLog = -700.0;

std::shared_ptr<const TruncationPlan> make_plan(const KernelSpec& spec, double radius,
                                                double tail_tol = kDefaultTailTol);

/// Coefficients of f(radius * w) * exp(-log_scale). Terms more than 700 below the
/// largest are flushed; the rest have log-moduli in [-350, 350] up to log|xi_n|.
struct ScaledPolynomial {
  std::vector<std::complex<double>> coeffs;
  double radius = 0.0;
  double log_scale = 0.0;
};

/// f(z) = mantissa * exp(log_scale); keeps |f| representable far beyond double range.
struct ScaledValue {
  std::complex<double> mantissa;
  double log_scale = 0.0;
  double log_abs() const { return std::log(std::abs(mantissa)) + log_scale; }
};

/// One realization f(z) = sum_{n<=N} xi_n a_n z^n.
class SampledFunction {
 public:
  SampledFunction(std::shared_ptr<const TruncationPlan> plan, std::uint64_t seed);

  const TruncationPlan& plan() const { return *plan_; }
  const KernelSpec& spec() const { return plan_->spec; }
  std::size_t degree() const { return plan_->degree; }
  double valid_radius() const { return plan_->valid_radius; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<std::complex<double>>& xi() const { return xi_; }

  /// Coefficients of p(w) = f(valid_radius * w) * exp(-log_scale).
  const std::vector<std::complex<double>>& scaled_coefficients() const { return scaled_; }
  /// The same rescaled to an arbitrary radius. Inside valid_radius the fixed scaling
  /// can flush the terms that dominate near the origin; this one cannot.
  ScaledPolynomial coefficients_at(double radius) const;

  ScaledValue evaluate_scaled(std::complex<double> z) const;
  ScaledValue evaluate_d1_scaled(std::complex<double> z) const;
  /// Linear-scale values; overflow to inf if |f| exceeds double range.
  std::complex<double> evaluate(std::complex<double> z) const;
  std::complex<double> evaluate_d1(std::complex<double> z) const;
  /// |z| beyond 1.5 valid_radius: the truncation no longer tracks f.
  bool truncation_warning(std::complex<double> z) const { return std::abs(z) > 1.5 * valid_radius(); }

 private:
  std::shared_ptr<const TruncationPlan> plan_;
  std::uint64_t seed_;
  std::vector<std::complex<double>> xi_;
  std::vector<std::complex<double>> scaled_;
  /// some nonzero coefficient was flushed in scaled_
  bool flushed_low_ = false;

  bool needs_local_scale(std::complex<double> z) const;
};

/// xi_n for n = 0..degree: (X + iY)/sqrt(2) with X, Y standard normal by Box-Muller on
/// Philox4x64-10 with counter (n, stream, 0, 0) and a key derived from `seed`.
std::vector<std::complex<double>> gaussian_draws(std::uint64_t seed, std::size_t count, std::uint64_t stream = 0);

SampledFunction sample(const KernelSpec& spec, std::size_t degree, std::uint64_t seed,
                       double tail_tol = kDefaultTailTol);

}  // namespace gaf
