#pragma once

#include <complex>
#include <span>
#include <vector>

namespace gaf {

using Complex = std::complex<double>;

/// p(w)/p'(w) and the backward-error test |p(w)| <= 8 (n+1) eps sum |c_k| |w|^k.
struct NewtonRatio {
  Complex ratio;
  bool converged = false;
  /// log|p(w)|, -inf at an exact zero.
  double log_abs_value = 0.0;
};

/// Coefficients with their moduli and Newton polygon precomputed. Evaluation at w is
/// split at the index m of the largest term |c_m w^m|, so every partial sum stays
/// within n |c_m| |w|^m and polynomials whose terms span far more than the double
/// range evaluate without overflow or harmful underflow.
class PreparedPolynomial {
 public:
  /// Keeps a view of `coeffs`; at least one coefficient must be nonzero.
  explicit PreparedPolynomial(std::span<const Complex> coeffs);

  std::size_t degree() const { return coeffs_.size() - 1; }
  /// Index of the largest term at modulus |w|.
  std::size_t dominant_index(double abs_w) const;
  NewtonRatio newton_ratio(Complex w) const;

 private:
  std::span<const Complex> coeffs_;
  std::vector<double> abs_;
  std::vector<std::size_t> hull_;
  /// hull_log_radius_[e]: log|w| at which hull_[e + 1] overtakes hull_[e]; increasing
  std::vector<double> hull_log_radius_;
};

NewtonRatio newton_ratio(std::span<const Complex> coeffs, Complex w);

struct PolynomialRoots {
  std::vector<Complex> roots;
  /// Per root: the backward-error test passed.
  std::vector<bool> converged;
  int iterations = 0;
};

/// All roots of sum_k coeffs[k] w^k by Aberth-Ehrlich iteration with Gauss-Seidel
/// updates, started from the Newton polygon of |coeffs|. Leading zeros of the
/// coefficient vector give exact roots at 0; trailing zeros lower the degree.
/// Converged roots get up to three Newton polishing steps.
PolynomialRoots polynomial_roots(std::span<const Complex> coeffs, int max_iterations = 1000);

}  // namespace gaf
