#include "gaf/zerofinder.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "gaf/polynomial.hpp"

namespace gaf {

namespace {

constexpr int kMaxNodes = 1 << 21;
constexpr int kMaxPerturbations = 5;

double perturbed(double radius, int attempt) { return radius * (1.0 + 0.0002 * attempt); }

}  // namespace

namespace {

// FFTW's planner is not thread-safe; plans are created once per size under a lock
// and then executed concurrently on separate arrays.
fftw_plan backward_plan(int size) {
  static std::mutex mutex;
  static std::map<int, fftw_plan> plans;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = plans.find(size);
  if (it == plans.end()) {
    fftw_complex* in = fftw_alloc_complex(static_cast<std::size_t>(size));
    fftw_complex* out = fftw_alloc_complex(static_cast<std::size_t>(size));
    fftw_plan plan = fftw_plan_dft_1d(size, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_free(in);
    fftw_free(out);
    it = plans.emplace(size, plan).first;
  }
  return it->second;
}

struct FftwBuffer {
  explicit FftwBuffer(int size) : data(fftw_alloc_complex(static_cast<std::size_t>(size))) {}
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  Complex* get() { return reinterpret_cast<Complex*>(data); }
  fftw_complex* data;
};

}  // namespace

ArgumentPrincipleCount count_on_circle(const SampledFunction& fn, double radius) {
  const ScaledPolynomial local = fn.coefficients_at(radius);
  const auto& c = local.coeffs;
  std::size_t effective = c.size();
  while (effective > 1 && c[effective - 1] == Complex{}) {
    --effective;
  }
  ArgumentPrincipleCount out{-1, 0.0, radius, 0};
  for (int nodes = std::max<int>(64, 4 * static_cast<int>(effective)); nodes <= kMaxNodes; nodes *= 2) {
    // p and w p' at w_j = e^{2 pi i j / nodes} are backward DFTs of c_k and k c_k
    FftwBuffer p_in(nodes), dp_in(nodes), p(nodes), dp(nodes);
    for (int k = 0; k < nodes; ++k) {
      const Complex term = k < static_cast<int>(effective) ? c[static_cast<std::size_t>(k)] : Complex{};
      p_in.get()[k] = term;
      dp_in.get()[k] = static_cast<double>(k) * term;
    }
    const fftw_plan plan = backward_plan(nodes);
    fftw_execute_dft(plan, p_in.data, p.data);
    fftw_execute_dft(plan, dp_in.data, dp.data);

    double trapezoid = 0.0;
    double winding = 0.0;
    bool resolved = true;
    double previous_arg = 0.0;
    for (int j = 0; j <= nodes; ++j) {
      const Complex pj = p.get()[j % nodes];
      if (pj == Complex{}) {
        return out;  // exact zero on the circle
      }
      const double a = std::arg(pj);
      if (j > 0) {
        const double step = wrap_angle(a - previous_arg);
        resolved = resolved && std::abs(step) < std::numbers::pi / 3.0;
        winding += step;
      }
      if (j < nodes) {
        trapezoid += (dp.get()[j] / pj).real();  // |p|^2 may overflow
      }
      previous_arg = a;
    }
    out.raw = trapezoid / nodes;
    out.nodes = nodes;
    if (!resolved) {
      continue;
    }
    const int count = static_cast<int>(std::lround(winding / (2.0 * std::numbers::pi)));
    if (std::abs(out.raw - count) <= 0.1) {
      out.count = count;
      return out;
    }
  }
  return out;
}

ArgumentPrincipleCount count_via_argument_principle(const SampledFunction& fn, double radius) {
  for (int attempt = 0; attempt <= kMaxPerturbations; ++attempt) {
    const ArgumentPrincipleCount c = count_on_circle(fn, perturbed(radius, attempt));
    if (c.count >= 0) {
      return c;
    }
  }
  throw ContourThroughZero("count_via_argument_principle",
                           "no certified count on |z| = R(1 + 0.0002 m), m = 0..5, R = " + std::to_string(radius));
}

namespace {

// Terms more than 700 below the largest are flushed, so one rescaled polynomial
// is accurate to e^{-60} wherever the largest term is within kBandSpan of the
// largest term on its outer circle. Band boundaries move inward by at most 1%.
constexpr double kBandSpan = 640.0;

// Outer radii of the bands, innermost first.
std::vector<double> band_radii(const TruncationPlan& plan, double radius) {
  std::size_t first = 0;
  while (plan.log_abs_coeff[first] == kNegInf) {
    ++first;
  }
  std::vector<double> radii{radius};
  for (;;) {
    const double outer = radii.back();
    const double top = plan.log_max_term(outer);
    if (plan.log_abs_coeff[first] + static_cast<double>(first) * std::log(outer) >= top - kBandSpan) {
      break;  // covers the disk down to the origin
    }
    double lo = outer * 1e-3;
    while (plan.log_max_term(lo) > top - kBandSpan) {
      lo *= 1e-3;
    }
    double hi = outer;
    for (int it = 0; it < 100 && hi / lo > 1.0 + 1e-9; ++it) {
      const double mid = std::sqrt(lo * hi);
      (plan.log_max_term(mid) > top - kBandSpan ? hi : lo) = mid;
    }
    radii.push_back(hi);
  }
  std::reverse(radii.begin(), radii.end());
  return radii;
}

struct Band {
  ScaledPolynomial poly;
  std::vector<Complex> points;  // roots mapped back to z
  std::vector<char> converged;
};

bool near_modulus(const Band& band, double r, double tol) {
  return std::any_of(band.points.begin(), band.points.end(),
                     [&](Complex z) { return std::abs(std::abs(z) - r) <= tol; });
}

}  // namespace

ZeroSet zeros_in_disk(const SampledFunction& fn, double radius) {
  if (!(radius > 0.0) || radius > fn.valid_radius() * (1.0 + 1e-12)) {
    throw SupportExceedsValidity("zeros_in_disk", "radius " + std::to_string(radius) +
                                                      " outside the validity disk " +
                                                      std::to_string(fn.valid_radius()));
  }
  const std::vector<double> outer = band_radii(fn.plan(), radius);
  std::vector<Band> bands(outer.size());
  for (std::size_t j = 0; j < outer.size(); ++j) {
    Band& band = bands[j];
    band.poly = fn.coefficients_at(outer[j]);
    const PolynomialRoots found = polynomial_roots(band.poly.coeffs);
    const double inner = j == 0 ? 0.0 : outer[j - 1];
    for (std::size_t i = 0; i < found.roots.size(); ++i) {
      const Complex z = outer[j] * found.roots[i];
      const double m = std::abs(z);
      if (!found.converged[i] && m <= 1.5 * outer[j] && m >= 0.98 * inner) {
        throw RootFindingStalled("zeros_in_disk", "Aberth iteration did not converge for a root near |z| = " +
                                                      std::to_string(m));
      }
      band.points.push_back(z);
      band.converged.push_back(found.converged[i] ? 1 : 0);
    }
  }
  // boundaries between bands sit away from the roots of both neighbours
  std::vector<double> boundary(outer.begin(), outer.end() - 1);
  for (std::size_t j = 0; j < boundary.size(); ++j) {
    const double tol = 1e-7 * boundary[j];
    for (int step = 1; near_modulus(bands[j], boundary[j], tol) || near_modulus(bands[j + 1], boundary[j], tol);
         ++step) {
      if (step > 1000) {
        throw RootFindingStalled("zeros_in_disk", "no root-free band boundary near |z| = " +
                                                      std::to_string(outer[j]));
      }
      boundary[j] = outer[j] * (1.0 - 1e-5 * step);
    }
  }
  // move the outer circle off any root, then certify
  for (int attempt = 0; attempt <= kMaxPerturbations; ++attempt) {
    const double r = perturbed(radius, attempt);
    if (near_modulus(bands.back(), r, 1e-9 * radius)) {
      continue;
    }
    const ArgumentPrincipleCount certified = count_on_circle(fn, r);
    if (certified.count < 0) {
      continue;
    }
    ZeroSet out;
    out.disk_radius = r;
    out.certified_count = certified.count;
    out.seed = fn.seed();
    for (std::size_t j = 0; j < bands.size(); ++j) {
      const double lo = j == 0 ? -1.0 : boundary[j - 1];
      const double hi = j + 1 == bands.size() ? r : boundary[j];
      const Band& band = bands[j];
      const PreparedPolynomial prepared(band.poly.coeffs);
      for (Complex z : band.points) {
        const double m = std::abs(z);
        if (m <= lo || m > hi) {
          continue;
        }
        const double log_p = prepared.newton_ratio(z / band.poly.radius).log_abs_value;
        const double residual = std::exp(band.poly.log_scale + log_p - 0.5 * log_kernel(fn.spec(), m * m));
        if (!(residual <= kMaxResidual)) {
          throw RootFindingStalled("zeros_in_disk", "residual " + format_g(residual) + " at z = (" +
                                                        format_g(z.real()) + ", " + format_g(z.imag()) + ")");
        }
        out.points.push_back(z);
        out.residuals.push_back(residual);
      }
    }
    if (static_cast<int>(out.points.size()) != out.certified_count) {
      throw RootFindingStalled("zeros_in_disk", "argument principle counts " + std::to_string(out.certified_count) +
                                                    " zeros but " + std::to_string(out.points.size()) +
                                                    " roots were found");
    }
    return out;
  }
  throw ContourThroughZero("zeros_in_disk", "no certified circle near |z| = " + std::to_string(radius));
}

}  // namespace gaf
