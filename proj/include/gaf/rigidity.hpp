#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gaf/kernel.hpp"
#include "gaf/linstat.hpp"
#include "gaf/sampler.hpp"
#include "gaf/zerofinder.hpp"

namespace gaf {

/// S_k = sum_j z_j^k for k = 0..k_max.
std::vector<std::complex<double>> power_sums(std::span<const std::complex<double>> points, int k_max);

/// E int Phi dZ - sum over zeros with |z| > L of Phi(z), Phi = z^k phi_eta(|z|/L).
/// Needs zeros.disk_radius >= L e^{1/eta}.
std::complex<double> recover_power_sum(const KernelSpec& spec, const ZeroSet& zeros, int k, double eta, double L);
/// Same with E int Phi dZ supplied.
std::complex<double> recover_power_sum(std::complex<double> expected, const ZeroSet& zeros, const TestFunction& tf);

struct Reconstruction {
  std::vector<std::complex<double>> points;
  /// some |e_m| exceeded 1e12 max|S_i|; the points are still returned
  bool ill_conditioned = false;
};

/// Roots of z^N - e_1 z^{N-1} + ... + (-1)^N e_N with e_m from Newton's identities
/// m e_m = sum_{i=1}^m (-1)^{i-1} e_{m-i} S_i. S[0] must be the nonnegative integer N
/// and S must hold at least N + 1 entries.
Reconstruction newton_reconstruct(std::span<const std::complex<double>> sums);

struct RigidityConfig {
  KernelSpec spec = KernelSpec::gef();
  double d_radius = 1.0;
  int k_max = 2;
  double eta = 0.5;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  double tail_tol = kDefaultTailTol;
};

struct TrialRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  bool failed = false;
  std::string failure;
  int true_count = 0;
  int recovered_count = 0;
  /// |S0_hat - round(S0_hat)|
  double count_rounding = 0.0;
  std::vector<std::complex<double>> true_sums;       ///< S_0..S_K
  std::vector<std::complex<double>> recovered_sums;  ///< S_0_hat..S_K_hat
  std::vector<std::complex<double>> true_points;
  std::vector<std::complex<double>> reconstructed;
  bool ill_conditioned = false;
  /// NaN unless recovered_count == true_count
  double matching_distance = 0.0;
  /// max_k |(S_hat_k - S_k) - (E int Phi_k dZ - int Phi_k dZ)|
  double identity_error = 0.0;
};

struct RecoveryReport {
  RigidityConfig config;
  std::vector<TrialRecord> trials;
  std::size_t failed = 0;
  double count_success_rate = 0.0;
  std::vector<double> rms_error;                 ///< per k
  std::vector<std::complex<double>> mean_error;  ///< per k, E(S_hat_k - S_k)
  std::vector<double> mean_error_stderr;         ///< per k, of |mean error|
  double mean_matching_distance = 0.0;           ///< over trials with matching counts
  double median_matching_distance = 0.0;
  std::size_t matched_trials = 0;
};

/// Per trial: sample f on the disk of radius D e^{1/eta}, find its zeros, recover
/// S_0..S_K from the zeros outside D, round S_0, reconstruct the inside zeros and
/// score them. Trials that fail numerically are recorded and excluded.
RecoveryReport rigidity_experiment(const RigidityConfig& config);

}  // namespace gaf
