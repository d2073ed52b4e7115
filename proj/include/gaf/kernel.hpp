#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gaf/errors.hpp"
#include "gaf/log_complex.hpp"

namespace gaf {

/// Hard cap on the number of Taylor terms any series evaluation may touch.
inline constexpr std::size_t kMaxSeriesTerms = 200000;

enum class Family { gef, mittag_leffler, double_exp, lindelof, custom };

class GridTooSmall : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// A covariance kernel G(z) = sum a_n^2 z^n with a_n^2 >= 0, described by its
/// log-coefficient rule log a_n^2. Immutable; cheap to copy.
///
/// Built-in families:
///   gef                 a_n^2 = 1/n!                       G(z) = e^z
///   mittag-leffler:A    a_n^2 = 1/Gamma(1 + n/A)
///   double-exp          a_n^2 = e B_n / n!  (B_n Bell)     G(z) = exp(e^z)
///   lindelof:A          a_n^2 = log^{-A n}(n + e)
///   custom:PATH         one log a_n^2 per line; "-inf" marks a zero coefficient
class KernelSpec {
 public:
  static KernelSpec gef();
  static KernelSpec mittag_leffler(double alpha);
  static KernelSpec double_exp();
  static KernelSpec lindelof(double alpha);
  static KernelSpec custom(std::vector<double> log_sq_coeffs, std::string source = "inline");
  static KernelSpec custom_from_file(const std::string& path);
  /// Accepts the config strings listed above; throws ConfigError otherwise.
  static KernelSpec parse(std::string_view text);

  Family family() const { return family_; }
  double alpha() const { return alpha_; }
  /// Config string that parse() maps back to this kernel.
  std::string name() const;

  /// log a_n^2; -inf for a vanishing coefficient.
  double log_sq_coeff(std::size_t n) const;
  /// Number of coefficients the rule can produce (finite for custom and double-exp).
  std::size_t coefficient_count() const;

 private:
  KernelSpec(Family family, double alpha, std::shared_ptr<const std::vector<double>> table,
             std::string source);

  Family family_ = Family::gef;
  double alpha_ = 1.0;
  std::shared_ptr<const std::vector<double>> table_;
  std::string source_;
};

/// True when log a_n^2 / n over the second half of the first `prefix` coefficients is
/// decreasing and ends below `threshold`, the finite-prefix reading of a_n^{1/n} -> 0.
bool coefficients_look_entire(const KernelSpec& spec, std::size_t prefix, double threshold = -1.0);

/// log G(r), a(r) = r G'(r)/G(r) and b(r) = r a'(r).
struct KernelMoments {
  double log_g = kNegInf;
  double a = 0.0;
  double b = 0.0;
};

/// log a_n^2 + n log x for n = 0, 1, ... until 50 consecutive terms fall `decay`
/// below the running maximum. Throws NonConvergent at the hard cap or when a finite
/// coefficient table runs out before the tail has decayed.
std::vector<double> log_series_terms(const KernelSpec& spec, double log_x, double decay = 36.85);

/// Closed form when the family has one at r, series otherwise.
KernelMoments kernel_moments(const KernelSpec& spec, double r);
/// Always the log-sum-exp series; used to cross-check the closed forms.
KernelMoments series_moments(const KernelSpec& spec, double r);
/// Whether kernel_moments(spec, r) takes a closed-form path.
bool has_closed_form(const KernelSpec& spec, double r);

double log_kernel(const KernelSpec& spec, double r);
double hayman_a(const KernelSpec& spec, double r);
double hayman_b(const KernelSpec& spec, double r);
/// log b(r); finite for the double exponential even where b(r) overflows.
double log_hayman_b(const KernelSpec& spec, double r);

/// log G(r e^{i theta}) with a bound on the absolute error of G(r e^{i theta})
/// expressed as a fraction of G(r). precision_loss is set when fewer than 20
/// significant bits survive cancellation; the value is still returned.
struct ComplexKernelValue {
  LogComplex value;
  double error_bound = 0.0;
  bool precision_loss = false;
};

ComplexKernelValue log_kernel(const KernelSpec& spec, double r, double theta);
ComplexKernelValue series_log_kernel(const KernelSpec& spec, double r, double theta);

/// |J(z,w)|^2 = |G(z conj w)|^2 / (G(|z|^2) G(|w|^2)), in [0, 1].
/// Throws KernelBoundViolated if the computed value exceeds 1 + 1e-10.
double normalized_kernel_sq(const KernelSpec& spec, std::complex<double> z, std::complex<double> w);

/// First intensity of the zero set, a'(|z|^2)/pi.
double first_intensity(const KernelSpec& spec, std::complex<double> z);

/// E #{zeros in |z| <= radius} = a(radius^2).
double expected_zero_count(const KernelSpec& spec, double radius);

struct LowerOrderEstimate {
  double estimate = 0.0;  ///< min of log b(r)/log r over the tail half of the grid
  bool diverging = false;  ///< ratio increasing through the tail: the fully rigid regime
  std::vector<double> ratios;
};

/// Needs at least 8 increasing grid points spanning 4 decades, all > 1.
LowerOrderEstimate lower_order_estimate(const KernelSpec& spec, std::span<const double> r_grid);

}  // namespace gaf
