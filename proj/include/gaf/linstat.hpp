#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "gaf/kernel.hpp"
#include "gaf/sampler.hpp"
#include "gaf/zerofinder.hpp"

namespace gaf {

/// phi_eta(r) = 1 - s(eta log r) on (1, e^{1/eta}) with the quintic smoothstep
/// s(t) = 6t^5 - 15t^4 + 10t^3; 1 below, 0 above. C^2 everywhere.
/// For eta <= 1: |r phi'| <= 1.875 eta and |r^2 phi''| <= 7.65 eta.
struct BumpValue {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

BumpValue bump(double eta, double r);

/// Phi(z) = z^k phi_eta(|z| / L).
class TestFunction {
 public:
  /// Throws ConfigError unless k >= 0, eta in (0, 1], L >= 1.
  TestFunction(int k, double eta, double L);

  int k() const { return k_; }
  double eta() const { return eta_; }
  double L() const { return L_; }
  /// L e^{1/eta}; Phi vanishes beyond.
  double support_radius() const;

  std::complex<double> value(std::complex<double> z) const;
  /// Delta Phi(z) = D(|z|) e^{ik arg z}.
  std::complex<double> laplacian(std::complex<double> z) const;
  /// D(r) = -eta r^{k-2} [2k s'(t) + eta s''(t)], t = eta log(r/L); 0 off the annulus.
  double radial_laplacian(double r) const;

 private:
  int k_;
  double eta_;
  double L_;
};

/// sum_j Phi(z_j). Throws SupportExceedsValidity when the zero set does not cover
/// the support of Phi.
std::complex<double> linear_statistic(const ZeroSet& zeros, const TestFunction& tf);

/// E sum Phi(z_j): 0 for k >= 1; for k = 0, a(L^2) + 2 int_L^{L e^{1/eta}} phi(r/L) a'(r^2) r dr.
std::complex<double> expected_statistic(const KernelSpec& spec, const TestFunction& tf);
/// The k = 0 value again, integrated by parts: int_0^1 a(L^2 e^{2t/eta}) s'(t) dt.
double expected_statistic_by_parts(const KernelSpec& spec, const TestFunction& tf);

struct VarianceEstimate {
  double variance = 0.0;  ///< sample variance E|S - mean S|^2
  double std_error = 0.0;  ///< jackknife
  std::complex<double> mean;
  std::size_t trials = 0;  ///< successful trials
  std::size_t failed = 0;  ///< trials excluded after a numerical failure
};

/// Sample variance of complex values with O(n) leave-one-out jackknife error.
VarianceEstimate variance_of_samples(std::span<const std::complex<double>> values);

/// Statistic of trial `trial` for every test function, sharing one zero set per
/// trial; rows are trials, columns test functions. Failed trials have no row and
/// are counted in `failed`.
struct StatisticSamples {
  std::vector<std::vector<std::complex<double>>> values;
  std::size_t failed = 0;
};

StatisticSamples sample_statistics(const KernelSpec& spec, std::span<const TestFunction> tfs, std::size_t trials,
                                   std::uint64_t seed, unsigned threads = 1, double tail_tol = kDefaultTailTol);

/// Monte-Carlo variance of sum Phi(z_j); trials >= 100.
VarianceEstimate variance_mc(const KernelSpec& spec, const TestFunction& tf, std::size_t trials,
                             std::uint64_t seed, unsigned threads = 1, double tail_tol = kDefaultTailTol);

/// (1/4pi) int int D(r) D(s) r s int_0^pi cos(k theta) Li_2(|J|^2) d theta dr ds, with
/// composite Gauss-Legendre outside (panels doubled until 1e-3 relative agreement)
/// and adaptive Gauss-Kronrod inside.
double variance_quadrature(const KernelSpec& spec, const TestFunction& tf);

/// I_L = int int chi(r) chi(s) A(L^2 rs) / (G(L^2 r^2) G(L^2 s^2)) r s dr ds over
/// [1, e^{1/eta}]^2 with chi(r) = r^{k-2} and A(R) = 2pi int_{-pi}^{pi} |G(R e^{i theta})|^2 d theta.
double bound_integral(const KernelSpec& spec, const TestFunction& tf);

/// (32/pi^2) (k+1)^2 eta^2 L^{2k} I_L: the kernel bound with the bump constants
/// |r phi'|, |r^2 phi''| <= 8 eta, so |Delta Phi| <= 16 (k+1) eta |z|^{k-2}.
double variance_bound(const KernelSpec& spec, const TestFunction& tf);

/// The final form c5 eta^2 L^{-2}.
double variance_bound_final_form(double c5, const TestFunction& tf);

}  // namespace gaf
