#include "gaf/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gaf {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Upper convex hull of (k, log|c_k|) over nonzero coefficients.
std::vector<std::size_t> newton_polygon(const std::vector<double>& log_abs) {
  std::vector<std::size_t> hull;
  for (std::size_t k = 0; k < log_abs.size(); ++k) {
    if (!std::isfinite(log_abs[k])) {
      continue;
    }
    while (hull.size() >= 2) {
      const std::size_t i = hull[hull.size() - 2];
      const std::size_t j = hull.back();
      // drop j if it lies on or below the chord i -> k
      const double cross = (log_abs[j] - log_abs[i]) * static_cast<double>(k - i) -
                           (log_abs[k] - log_abs[i]) * static_cast<double>(j - i);
      if (cross > 0.0) {
        break;
      }
      hull.pop_back();
    }
    hull.push_back(k);
  }
  return hull;
}

std::vector<Complex> initial_guesses(std::span<const Complex> coeffs) {
  const std::size_t n = coeffs.size() - 1;
  std::vector<double> log_abs(coeffs.size());
  for (std::size_t k = 0; k <= n; ++k) {
    log_abs[k] = std::log(std::abs(coeffs[k]));
  }
  const std::vector<std::size_t> hull = newton_polygon(log_abs);
  std::vector<Complex> guesses;
  guesses.reserve(n);
  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    const std::size_t i = hull[e];
    const std::size_t j = hull[e + 1];
    const double count = static_cast<double>(j - i);
    const double radius = std::exp((log_abs[i] - log_abs[j]) / count);
    // offset breaks symmetry between edges and with the real axis
    const double offset = 0.4 + 1.7 * static_cast<double>(e);
    for (std::size_t m = 0; m < j - i; ++m) {
      guesses.push_back(std::polar(radius, offset + 2.0 * std::numbers::pi * static_cast<double>(m) / count));
    }
  }
  return guesses;
}

double fast_abs(Complex z) { return std::sqrt(std::norm(z)); }

Complex reciprocal(Complex z) { return std::conj(z) / std::norm(z); }

}  // namespace

PreparedPolynomial::PreparedPolynomial(std::span<const Complex> coeffs) : coeffs_(coeffs), abs_(coeffs.size()) {
  std::vector<double> log_abs(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    abs_[k] = fast_abs(coeffs[k]);
    log_abs[k] = std::log(abs_[k]);
  }
  hull_ = newton_polygon(log_abs);
  if (hull_.empty()) {
    throw std::invalid_argument("PreparedPolynomial: all coefficients vanish");
  }
  for (std::size_t e = 0; e + 1 < hull_.size(); ++e) {
    const std::size_t i = hull_[e];
    const std::size_t j = hull_[e + 1];
    hull_log_radius_.push_back((log_abs[i] - log_abs[j]) / static_cast<double>(j - i));
  }
}

std::size_t PreparedPolynomial::dominant_index(double abs_w) const {
  const double lw = std::log(abs_w);
  const auto e = std::upper_bound(hull_log_radius_.begin(), hull_log_radius_.end(), lw) - hull_log_radius_.begin();
  return hull_[static_cast<std::size_t>(e)];
}

NewtonRatio PreparedPolynomial::newton_ratio(Complex w) const {
  const std::span<const Complex> c = coeffs_;
  const std::size_t n = degree();
  NewtonRatio out;
  if (w == Complex{}) {
    out.log_abs_value = std::log(abs_[0]);
    out.converged = c[0] == Complex{};
    const Complex d = n >= 1 ? c[1] : Complex{};
    out.ratio = c[0] == Complex{} ? Complex{} : c[0] / d;
    return out;
  }
  const double aw = fast_abs(w);
  const std::size_t m = dominant_index(aw);
  // p(w) = w^m (H(w) + L(y)), H = sum_{k>=m} c_k w^{k-m}, L = sum_{k<m} c_k y^{m-k}, y = 1/w
  Complex h = c[n];
  Complex dh = 0.0;
  double bound = abs_[n];
  for (std::size_t k = n; k-- > m;) {
    dh = dh * w + h;
    h = h * w + c[k];
    bound = bound * aw + abs_[k];
  }
  Complex l = 0.0;
  Complex dl = 0.0;
  if (m > 0) {
    const Complex y = reciprocal(w);
    const double ay = 1.0 / aw;
    l = c[0];
    double low_bound = abs_[0];
    for (std::size_t k = 1; k < m; ++k) {
      dl = dl * y + l;
      l = l * y + c[k];
      low_bound = low_bound * ay + abs_[k];
    }
    // one more factor of y: L = y * (sum_{k<m} c_k y^{m-1-k})
    dl = dl * y + l;
    l = l * y;
    bound += low_bound * ay;
  }
  const Complex value = h + l;
  out.converged = fast_abs(value) <= 8.0 * static_cast<double>(n + 1) * kEps * bound;
  out.log_abs_value = std::log(std::abs(value)) + static_cast<double>(m) * std::log(aw);
  if (value == Complex{}) {
    out.ratio = Complex{};
    return out;
  }
  // p'/p = m/w + (H' - y^2 L')/(H + L)
  const Complex y = reciprocal(w);
  const Complex derivative_part = dh - y * y * dl;
  out.ratio = 1.0 / (static_cast<double>(m) * y + derivative_part / value);
  return out;
}

NewtonRatio newton_ratio(std::span<const Complex> c, Complex w) { return PreparedPolynomial(c).newton_ratio(w); }

PolynomialRoots polynomial_roots(std::span<const Complex> coeffs, int max_iterations) {
  PolynomialRoots out;
  std::size_t low = 0;
  while (low < coeffs.size() && coeffs[low] == Complex{}) {
    ++low;
  }
  if (low == coeffs.size()) {
    return out;  // zero polynomial: no isolated roots
  }
  std::size_t high = coeffs.size() - 1;
  while (coeffs[high] == Complex{}) {
    --high;
  }
  out.roots.assign(low, Complex{});
  out.converged.assign(low, true);
  if (high == low) {
    return out;
  }
  const std::span<const Complex> c = coeffs.subspan(low, high - low + 1);
  const std::size_t n = c.size() - 1;
  const PreparedPolynomial prepared(c);
  std::vector<Complex> w = initial_guesses(c);
  std::vector<bool> done(n, false);
  std::size_t remaining = n;
  int it = 0;
  for (; it < max_iterations && remaining > 0; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) {
        continue;
      }
      const NewtonRatio nr = prepared.newton_ratio(w[i]);
      if (nr.converged) {
        done[i] = true;
        --remaining;
        continue;
      }
      Complex repulsion = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) {
          repulsion += reciprocal(w[i] - w[j]);
        }
      }
      w[i] -= nr.ratio / (1.0 - nr.ratio * repulsion);
    }
  }
  out.iterations = it;
  for (std::size_t i = 0; i < n; ++i) {
    if (done[i]) {
      for (int step = 0; step < 3; ++step) {
        const NewtonRatio before = prepared.newton_ratio(w[i]);
        if (before.ratio == Complex{}) {
          break;
        }
        const Complex candidate = w[i] - before.ratio;
        if (!(prepared.newton_ratio(candidate).log_abs_value < before.log_abs_value)) {
          break;
        }
        w[i] = candidate;
      }
    }
    out.roots.push_back(w[i]);
    out.converged.push_back(done[i]);
  }
  return out;
}

}  // namespace gaf
