#pragma once

#include <functional>
#include <string>

namespace gaf {

using RealFunction = std::function<double(double)>;

/// Adaptive 15-point Gauss-Kronrod on [a, b] aiming at rel_tol relative to the L1
/// norm. Throws QuadratureFailure naming `operation` when the error estimate stays
/// above max(100 rel_tol L1, abs_floor).
double integrate_gk(const RealFunction& f, double a, double b, double rel_tol, double abs_floor,
                    const std::string& operation, unsigned max_depth = 18);

/// Composite 10-point Gauss-Legendre with `panels` equal panels.
double integrate_gl(const RealFunction& f, double a, double b, int panels);

/// Adaptive Simpson with an absolute tolerance; [a, b] is first cut into
/// `initial_panels` pieces so narrow peaks are seen.
double integrate_simpson(const RealFunction& f, double a, double b, double abs_tol, const std::string& operation,
                         int initial_panels = 64, int max_depth = 40);

}  // namespace gaf
