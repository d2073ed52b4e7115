#include "gaf/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "gaf/errors.hpp"

namespace gaf {

double integrate_gk(const RealFunction& f, double a, double b, double rel_tol, double abs_floor,
                    const std::string& operation, unsigned max_depth) {
  if (a == b) {
    return 0.0;
  }
  using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
  double error = 0.0;
  double l1 = 0.0;
  // boost's tolerance is relative only; the previous pass's L1 turns abs_floor into
  // a relative target so tiny integrands are not refined down to rounding noise.
  // Past the rounding floor the summed |K - G| grows with depth, so depths are
  // tried shallow first and the first one meeting the tolerance wins.
  Rule::integrate(f, a, b, 0, rel_tol, &error, &l1);
  double value = 0.0;
  auto acceptable = [&] { return std::isfinite(value) && error <= std::max(100.0 * rel_tol * l1, abs_floor); };
  for (unsigned depth = std::min(3u, max_depth);; depth = std::min(depth + 3, max_depth)) {
    const double target = l1 > 0.0 ? std::max(rel_tol, 0.5 * abs_floor / l1) : rel_tol;
    value = Rule::integrate(f, a, b, depth, target, &error, &l1);
    if (acceptable() || depth == max_depth) {
      break;
    }
  }
  if (!acceptable()) {
    throw QuadratureFailure(operation, "Gauss-Kronrod error estimate " + format_g(error) + " (L1 " + format_g(l1) +
                                           ") above tolerance on [" + format_g(a) + ", " + format_g(b) + "]");
  }
  return value;
}

double integrate_gl(const RealFunction& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    sum += boost::math::quadrature::gauss<double, 10>::integrate(f, a + p * h, a + (p + 1) * h);
  }
  return sum;
}

namespace {

struct SimpsonState {
  const RealFunction& f;
  int max_depth;
  bool failed = false;
};

double simpson_step(SimpsonState& st, double a, double fa, double m, double fm, double b, double fb, double whole,
                    double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = st.f(lm);
  const double frm = st.f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  if (depth >= st.max_depth) {
    st.failed = true;
    return left + right + delta / 15.0;
  }
  return simpson_step(st, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth + 1) +
         simpson_step(st, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate_simpson(const RealFunction& f, double a, double b, double abs_tol, const std::string& operation,
                         int initial_panels, int max_depth) {
  SimpsonState st{f, max_depth};
  const double h = (b - a) / initial_panels;
  double total = 0.0;
  double x0 = a;
  double f0 = f(x0);
  for (int p = 0; p < initial_panels; ++p) {
    const double x2 = p + 1 == initial_panels ? b : a + (p + 1) * h;
    const double x1 = 0.5 * (x0 + x2);
    const double f1 = f(x1);
    const double f2 = f(x2);
    const double whole = (x2 - x0) / 6.0 * (f0 + 4.0 * f1 + f2);
    total += simpson_step(st, x0, f0, x1, f1, x2, f2, whole, abs_tol / initial_panels, 0);
    x0 = x2;
    f0 = f2;
  }
  if (st.failed || !std::isfinite(total)) {
    throw QuadratureFailure(operation, "adaptive Simpson hit its depth limit");
  }
  return total;
}

}  // namespace gaf
