#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "gaf/sampler.hpp"

namespace gaf {

/// Zeros of one realization inside |z| <= disk_radius.
struct ZeroSet {
  std::vector<std::complex<double>> points;
  /// |f(z_j)| / sqrt(G(|z_j|^2)), all <= kMaxResidual.
  std::vector<double> residuals;
  /// Radius actually used; may exceed the requested radius by up to 0.1% when the
  /// circle had to be moved off a zero.
  double disk_radius = 0.0;
  int certified_count = 0;
  std::uint64_t seed = 0;
};

inline constexpr double kMaxResidual = 1e-8;

struct ArgumentPrincipleCount {
  int count = 0;
  /// Trapezoid value of (1/2 pi i) \oint f'/f dz; within 0.1 of count.
  double raw = 0.0;
  double radius = 0.0;
  int nodes = 0;
};

/// Winding number of f on |z| = R' where R' = R (1 + 0.0002 m) for the first
/// m = 0..5 on which the count is certified. Throws ContourThroughZero otherwise.
ArgumentPrincipleCount count_via_argument_principle(const SampledFunction& fn, double radius);

/// The count on exactly |z| = radius, or nullopt-like count < 0 when the
/// trapezoid cannot be certified there.
ArgumentPrincipleCount count_on_circle(const SampledFunction& fn, double radius);

/// All zeros in |z| <= R via Aberth-Ehrlich on the truncation, certified against
/// the argument principle. Throws RootFindingStalled when a root that may lie inside
/// 1.5 R does not converge, when a residual exceeds kMaxResidual, or when the
/// certified count disagrees with the roots found.
ZeroSet zeros_in_disk(const SampledFunction& fn, double radius);

}  // namespace gaf
