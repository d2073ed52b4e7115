#pragma once

#include <span>
#include <vector>

#include "gaf/kernel.hpp"

namespace gaf {

/// min(pi/2, b(r)^{-2/5}): between the b^{-1/2} bulk and the b^{-1/3} cubic scale.
double estimate_delta(const KernelSpec& spec, double r);

struct ArcCheck {
  double value = 0.0;
  /// Some grid point lost more than 32 bits to cancellation; value then includes
  /// the attached error bound.
  bool precision_loss = false;
};

/// max over a symmetric 129-point grid on [-delta, delta] of the complex modulus
/// |log G(re^{i theta}) - (log G(r) + i theta a(r) - theta^2 b(r)/2)|, with the
/// imaginary part compared modulo 2 pi.
ArcCheck check_major_arc(const KernelSpec& spec, double r, double delta, int grid = 129);

struct MinorArcCheck {
  /// sup |G(re^{i theta})| sqrt(b) / G(r) over delta <= theta <= pi
  double ratio = 0.0;
  /// the same with b^{1/4}
  double ratio_quarter = 0.0;
  bool precision_loss = false;
};

MinorArcCheck check_minor_arc(const KernelSpec& spec, double r, double delta, int grid = 513);

/// A(R) sqrt(b(R)) / (4 pi^2 G(R)^2) with A(R) = 2 pi int_{-pi}^{pi} |G(R e^{i theta})|^2 d theta.
double verify_claim1(const KernelSpec& spec, double R);

struct Claim2Check {
  /// -log^2(s/r) min b - log(G^2(L^2 rs) / (G(L^2 r^2) G(L^2 s^2)))
  double slack = 0.0;
  /// max |log G| of the three evaluations; tolerances are relative to it
  double scale = 1.0;
};

/// Needs 0 < r <= s; min b over [L^2 r^2, L^2 s^2] on 64 log-spaced points plus endpoints.
Claim2Check verify_claim2(const KernelSpec& spec, double L, double r, double s);

struct ConvexityCheck {
  double min_second_difference = 0.0;
  double scale = 1.0;  ///< max |log G(e^t)| on the grid
};

/// Centered second differences of t -> log G(e^t); the grid must be uniform with >= 64 points.
ConvexityCheck check_log_convexity(const KernelSpec& spec, std::span<const double> t_grid);

/// n uniform points on [lo, hi].
std::vector<double> uniform_grid(double lo, double hi, int n);

struct AdmissibilityRow {
  double r = 0.0;
  double a = 0.0;
  double b = 0.0;
  double delta_hat = 0.0;
  double major_arc_err = 0.0;
  double minor_arc_ratio = 0.0;
  double minor_arc_ratio_quarter = 0.0;
  double claim1_ratio = 0.0;
  bool precision_loss = false;
};

struct AdmissibilityReport {
  std::vector<AdmissibilityRow> rows;
  double convexity_min = 0.0;
  double convexity_scale = 1.0;
  /// b increasing along the r grid and at least doubling from first to last
  bool b_divergent = false;
};

AdmissibilityReport admissibility_report(const KernelSpec& spec, std::span<const double> r_grid,
                                         std::span<const double> t_grid);

}  // namespace gaf
