#include "gaf/kernel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>

namespace gaf {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::size_t kBellTableSize = 4096;
// r^alpha beyond which the Mittag-Leffler kernel is alpha*exp(r^alpha) to full precision.
constexpr double kMittagLefflerAsymptotic = 40.0;

// log(e B_n / n!) for n < kBellTableSize, from the Bell triangle in log form.
std::shared_ptr<const std::vector<double>> double_exp_table() {
  static std::shared_ptr<const std::vector<double>> table;
  static std::once_flag once;
  std::call_once(once, [] {
    auto out = std::make_shared<std::vector<double>>(kBellTableSize);
    std::vector<double> row{0.0};  // log of row 0 = [1]
    std::vector<double> next;
    (*out)[0] = 1.0;
    for (std::size_t n = 1; n < kBellTableSize; ++n) {
      next.assign(n + 1, 0.0);
      next[0] = row.back();
      for (std::size_t j = 1; j <= n; ++j) {
        next[j] = log_add(next[j - 1], row[j - 1]);
      }
      row.swap(next);
      // row[0] of row n is B_n
      (*out)[n] = 1.0 + row[0] - std::lgamma(static_cast<double>(n) + 1.0);
    }
    table = std::move(out);
  });
  return table;
}

double parse_double(std::string_view text, std::string_view what) {
  std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ConfigError("cannot parse " + std::string(what) + " from '" + s + "'");
  }
  return v;
}

double require_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ConfigError("kernel parameter alpha must be positive and finite");
  }
  return alpha;
}

// 1/Gamma(x), zero at the poles.
double reciprocal_gamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) {
    return 0.0;
  }
  return 1.0 / std::tgamma(x);
}

bool mittag_leffler_is_exp(const KernelSpec& spec) {
  return spec.family() == Family::mittag_leffler && spec.alpha() == 1.0;
}

bool mittag_leffler_is_cosh(const KernelSpec& spec) {
  return spec.family() == Family::mittag_leffler && spec.alpha() == 0.5;
}

bool mittag_leffler_asymptotic(const KernelSpec& spec, double r) {
  return spec.family() == Family::mittag_leffler && spec.alpha() > 0.5 &&
         std::pow(r, spec.alpha()) >= kMittagLefflerAsymptotic;
}

// Sector |arg z| <= mu in which the exponential term of the Mittag-Leffler
// expansion is kept; strictly between pi/(2 alpha) and min(pi, pi/alpha).
double mittag_leffler_sector(double alpha) {
  return 0.5 * (std::numbers::pi / (2.0 * alpha) + std::min(std::numbers::pi, std::numbers::pi / alpha));
}

bool mittag_leffler_complex_asymptotic(const KernelSpec& spec, double r) {
  if (!mittag_leffler_asymptotic(spec, r)) {
    return false;
  }
  // the dropped exponential at the sector edge must be negligible
  const double edge = std::pow(r, spec.alpha()) * std::cos(spec.alpha() * mittag_leffler_sector(spec.alpha()));
  return edge < -27.7;
}

KernelMoments closed_moments(const KernelSpec& spec, double r) {
  switch (spec.family()) {
    case Family::gef:
      return {r, r, r};
    case Family::double_exp: {
      const double er = std::exp(r);
      return {er, r * er, r * (r + 1.0) * er};
    }
    case Family::mittag_leffler: {
      if (mittag_leffler_is_exp(spec)) {
        return {r, r, r};
      }
      if (mittag_leffler_is_cosh(spec)) {
        const double s = std::sqrt(r);
        const double t = std::tanh(s);
        const double sech = 1.0 / std::cosh(s);
        return {s + std::log1p(std::exp(-2.0 * s)) - std::numbers::ln2, 0.5 * s * t,
                0.25 * s * t + 0.25 * r * sech * sech};
      }
      const double alpha = spec.alpha();
      const double ra = std::pow(r, alpha);
      return {std::log(alpha) + ra, alpha * ra, alpha * alpha * ra};
    }
    default:
      break;
  }
  throw NumericalError("kernel_moments", "no closed form for " + spec.name());
}

}  // namespace

KernelSpec::KernelSpec(Family family, double alpha, std::shared_ptr<const std::vector<double>> table,
                       std::string source)
    : family_(family), alpha_(alpha), table_(std::move(table)), source_(std::move(source)) {}

KernelSpec KernelSpec::gef() { return {Family::gef, 1.0, nullptr, {}}; }

KernelSpec KernelSpec::mittag_leffler(double alpha) {
  return {Family::mittag_leffler, require_alpha(alpha), nullptr, {}};
}

KernelSpec KernelSpec::double_exp() { return {Family::double_exp, 1.0, double_exp_table(), {}}; }

KernelSpec KernelSpec::lindelof(double alpha) { return {Family::lindelof, require_alpha(alpha), nullptr, {}}; }

KernelSpec KernelSpec::custom(std::vector<double> log_sq_coeffs, std::string source) {
  if (log_sq_coeffs.empty()) {
    throw ConfigError("custom kernel needs at least one coefficient");
  }
  for (double c : log_sq_coeffs) {
    if (std::isnan(c) || c == std::numeric_limits<double>::infinity()) {
      throw ConfigError("custom kernel coefficients must be finite or -inf");
    }
  }
  return {Family::custom, 1.0, std::make_shared<const std::vector<double>>(std::move(log_sq_coeffs)),
          std::move(source)};
}

KernelSpec KernelSpec::custom_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open custom kernel file '" + path + "'");
  }
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') {
      continue;
    }
    const auto last = line.find_last_not_of(" \t\r");
    values.push_back(parse_double(std::string_view(line).substr(first, last - first + 1), "log a_n^2"));
  }
  KernelSpec spec = custom(std::move(values), path);
  if (spec.coefficient_count() >= 8 && !coefficients_look_entire(spec, spec.coefficient_count())) {
    throw ConfigError("custom kernel '" + path + "' does not look like an entire function (a_n^{1/n} not decreasing)");
  }
  return spec;
}

KernelSpec KernelSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (head == "gef" && arg.empty()) {
    return gef();
  }
  if (head == "double-exp" && arg.empty()) {
    return double_exp();
  }
  if (head == "mittag-leffler" && !arg.empty()) {
    return mittag_leffler(parse_double(arg, "alpha"));
  }
  if (head == "lindelof" && !arg.empty()) {
    return lindelof(parse_double(arg, "alpha"));
  }
  if (head == "custom" && !arg.empty()) {
    return custom_from_file(std::string(arg));
  }
  throw ConfigError("unknown kernel family '" + std::string(text) + "'");
}

std::string KernelSpec::name() const {
  std::ostringstream os;
  os.precision(17);
  switch (family_) {
    case Family::gef:
      return "gef";
    case Family::double_exp:
      return "double-exp";
    case Family::mittag_leffler:
      os << "mittag-leffler:" << alpha_;
      return os.str();
    case Family::lindelof:
      os << "lindelof:" << alpha_;
      return os.str();
    case Family::custom:
      return "custom:" + source_;
  }
  return "unknown";
}

double KernelSpec::log_sq_coeff(std::size_t n) const {
  const double x = static_cast<double>(n);
  switch (family_) {
    case Family::gef:
      return -std::lgamma(x + 1.0);
    case Family::mittag_leffler:
      return -std::lgamma(1.0 + x / alpha_);
    case Family::lindelof:
      return -alpha_ * x * std::log(std::log(x + std::numbers::e));
    case Family::double_exp:
    case Family::custom:
      return n < table_->size() ? (*table_)[n] : kNegInf;
  }
  return kNegInf;
}

std::size_t KernelSpec::coefficient_count() const {
  if (table_) {
    return table_->size();
  }
  return std::numeric_limits<std::size_t>::max();
}

bool coefficients_look_entire(const KernelSpec& spec, std::size_t prefix, double threshold) {
  prefix = std::min(prefix, spec.coefficient_count());
  if (prefix < 8) {
    return false;
  }
  double previous = std::numeric_limits<double>::infinity();
  std::size_t nonzero = 0;
  for (std::size_t n = prefix / 2; n < prefix; ++n) {
    const double c = spec.log_sq_coeff(n);
    if (c == kNegInf) {
      continue;
    }
    const double per_index = c / static_cast<double>(n);
    if (!(per_index < previous)) {
      return false;
    }
    previous = per_index;
    ++nonzero;
  }
  return nonzero > 0 && previous < threshold;
}

std::vector<double> log_series_terms(const KernelSpec& spec, double log_x, double decay) {
  std::vector<double> terms;
  const std::size_t available = spec.coefficient_count();
  double top = kNegInf;
  std::size_t quiet = 0;
  for (std::size_t n = 0;; ++n) {
    if (n >= kMaxSeriesTerms) {
      throw NonConvergent("log_series_terms", spec.name() + ": series prefix exceeds " +
                                                  std::to_string(kMaxSeriesTerms) + " terms");
    }
    if (n >= available) {
      if (quiet > 0 || top == kNegInf) {
        break;
      }
      throw NonConvergent("log_series_terms",
                          spec.name() + ": coefficient table exhausted before the series tail decayed");
    }
    const double c = spec.log_sq_coeff(n);
    double t = kNegInf;
    if (n == 0) {
      t = c;
    } else if (log_x != kNegInf && c != kNegInf) {
      t = c + static_cast<double>(n) * log_x;
    }
    terms.push_back(t);
    if (log_x == kNegInf) {
      break;  // only the constant term survives at x = 0
    }
    if (t > top) {
      top = t;
      quiet = 0;
    } else if (t < top - decay) {
      if (++quiet >= 50) {
        break;
      }
    } else {
      quiet = 0;
    }
  }
  return terms;
}

KernelMoments series_moments(const KernelSpec& spec, double r) {
  if (!(r >= 0.0)) {
    throw ConfigError("kernel radius must be nonnegative");
  }
  const std::vector<double> terms = log_series_terms(spec, r == 0.0 ? kNegInf : std::log(r));
  const double top = *std::max_element(terms.begin(), terms.end());
  if (top == kNegInf) {
    throw NumericalError("series_moments", spec.name() + ": all coefficients vanish");
  }
  CompensatedSum<double> s0;
  CompensatedSum<double> s1;
  std::vector<double> weights(terms.size());
  for (std::size_t n = 0; n < terms.size(); ++n) {
    weights[n] = std::exp(terms[n] - top);
    s0.add(weights[n]);
    s1.add(static_cast<double>(n) * weights[n]);
  }
  const double mass = s0.value();
  const double mean = s1.value() / mass;
  // second pass around the mean avoids the cancellation in E n^2 - (E n)^2
  CompensatedSum<double> s2;
  CompensatedSum<double> shift;
  for (std::size_t n = 0; n < terms.size(); ++n) {
    const double d = static_cast<double>(n) - mean;
    shift.add(d * weights[n]);
    s2.add(d * d * weights[n]);
  }
  const double mean_shift = shift.value() / mass;
  KernelMoments out;
  out.log_g = top + std::log(mass);
  out.a = mean + mean_shift;
  out.b = std::max(0.0, s2.value() / mass - mean_shift * mean_shift);
  return out;
}

bool has_closed_form(const KernelSpec& spec, double r) {
  switch (spec.family()) {
    case Family::gef:
    case Family::double_exp:
      return true;
    case Family::mittag_leffler:
      return mittag_leffler_is_exp(spec) || mittag_leffler_is_cosh(spec) || mittag_leffler_asymptotic(spec, r);
    default:
      return false;
  }
}

KernelMoments kernel_moments(const KernelSpec& spec, double r) {
  if (!(r >= 0.0)) {
    throw ConfigError("kernel radius must be nonnegative");
  }
  if (has_closed_form(spec, r)) {
    return closed_moments(spec, r);
  }
  return series_moments(spec, r);
}

double log_kernel(const KernelSpec& spec, double r) { return kernel_moments(spec, r).log_g; }
double hayman_a(const KernelSpec& spec, double r) { return kernel_moments(spec, r).a; }
double hayman_b(const KernelSpec& spec, double r) { return kernel_moments(spec, r).b; }

ComplexKernelValue series_log_kernel(const KernelSpec& spec, double r, double theta) {
  if (!(r >= 0.0)) {
    throw ConfigError("kernel radius must be nonnegative");
  }
  theta = wrap_angle(theta);
  const std::vector<double> terms = log_series_terms(spec, r == 0.0 ? kNegInf : std::log(r));
  const double top = *std::max_element(terms.begin(), terms.end());
  if (top == kNegInf) {
    return {};
  }
  ComplexCompensatedSum sum;
  double mass = 0.0;
  const std::complex<double> step = std::polar(1.0, theta);
  std::complex<double> phase{1.0, 0.0};
  for (std::size_t n = 0; n < terms.size(); ++n) {
    if (n % 32 == 0) {
      phase = std::polar(1.0, static_cast<double>(n) * theta);
    }
    const double w = std::exp(terms[n] - top);
    mass += w;
    sum.add(w * phase);
    phase *= step;
  }
  const std::complex<double> s = sum.value();
  ComplexKernelValue out;
  // rounding in the terms and phases, relative to sum |terms| = G(r)
  const double abs_error = 8.0 * kEps * static_cast<double>(terms.size()) * mass;
  out.error_bound = abs_error / mass;
  out.value = LogComplex::from_complex(s);
  if (!out.value.is_zero()) {
    out.value.log_mod += top;
  }
  out.precision_loss = std::abs(s) < abs_error * std::ldexp(1.0, 20);
  return out;
}

namespace {

ComplexKernelValue closed_log_kernel(const KernelSpec& spec, double r, double theta, double log_g_real) {
  ComplexKernelValue out;
  const std::complex<double> z = std::polar(r, theta);
  if (spec.family() == Family::gef || mittag_leffler_is_exp(spec)) {
    out.value = LogComplex::exp(z);
    const double slop = kEps * (1.0 + r);
    out.error_bound = slop * std::exp(out.value.log_mod - log_g_real);
    out.precision_loss = std::abs(z.imag()) * kEps > std::ldexp(1.0, -20);
    return out;
  }
  if (spec.family() == Family::double_exp) {
    const std::complex<double> ez = std::exp(z);
    out.value = LogComplex::exp(ez);
    const double slop = kEps * (1.0 + r) * std::abs(ez);
    out.error_bound = slop * std::exp(out.value.log_mod - log_g_real);
    out.precision_loss = slop > std::ldexp(1.0, -20);
    return out;
  }
  if (mittag_leffler_is_cosh(spec)) {
    // cosh(w) = e^w (1 + e^{-2w}) / 2 with Re w >= 0
    const std::complex<double> w = std::sqrt(z);
    const std::complex<double> tail = std::exp(-2.0 * w);
    const std::complex<double> c = 1.0 + tail;
    if (c == std::complex<double>(0.0, 0.0)) {
      out.value = LogComplex::zero();
    } else {
      out.value = LogComplex{w.real() + std::log(std::abs(c)) - std::numbers::ln2, wrap_angle(w.imag() + std::arg(c))};
    }
    const double abs_err = 8.0 * kEps * (1.0 + std::abs(tail));
    out.error_bound = abs_err * std::exp(w.real() - std::numbers::ln2 - log_g_real);
    out.precision_loss = std::abs(c) < abs_err * std::ldexp(1.0, 20);
    return out;
  }
  // Mittag-Leffler, alpha > 1/2, large |z|:
  //   G(z) = alpha exp(z^alpha) - sum_k z^{-k} / Gamma(1 - k/alpha)
  // with the exponential kept only inside its sector.
  const double alpha = spec.alpha();
  // the algebraic series diverges; it is cut at its smallest term, about e^{-|z|^alpha}
  std::complex<double> algebraic{0.0, 0.0};
  double omitted = 0.0;
  for (int k = 1;; ++k) {
    const double x = 1.0 - k / alpha;
    const std::complex<double> term = std::pow(z, -k) * reciprocal_gamma(x);
    const double size = std::abs(term);
    const bool growing = k > 1 && size > omitted && omitted > 0.0;
    if (growing || k > 400 || x < -160.0 || (size > 0.0 && size <= 0.25 * kEps * std::abs(algebraic))) {
      omitted = growing ? omitted : size;
      break;
    }
    algebraic -= term;
    if (size > 0.0) {
      omitted = size;
    }
  }
  const bool in_sector = std::abs(theta) <= mittag_leffler_sector(alpha);
  const std::complex<double> za = std::polar(std::pow(r, alpha), alpha * theta);
  const double log_exp_term = in_sector ? std::log(alpha) + za.real() : kNegInf;
  const double log_algebraic = std::log(std::abs(algebraic));
  const double log_scale = std::max(log_exp_term, log_algebraic);
  std::complex<double> scaled = algebraic * std::exp(-log_scale);
  if (in_sector) {
    scaled += std::polar(std::exp(log_exp_term - log_scale), za.imag());
  }
  out.value = LogComplex::from_complex(scaled);
  if (!out.value.is_zero()) {
    out.value.log_mod += log_scale;
  }
  // next omitted algebraic term bounds the truncation error; rounding in z^alpha
  // is amplified by |z^alpha| in the exponential
  const double log_abs_error =
      log_add(std::log(omitted + 8.0 * kEps * (1.0 + std::abs(algebraic))),
              std::log(8.0 * kEps * (1.0 + std::pow(r, alpha))) + log_exp_term);
  out.error_bound = std::exp(log_abs_error - log_g_real);
  out.precision_loss = out.value.log_mod < log_abs_error + 20.0 * std::numbers::ln2;
  return out;
}

bool has_complex_closed_form(const KernelSpec& spec, double r) {
  switch (spec.family()) {
    case Family::gef:
    case Family::double_exp:
      return true;
    case Family::mittag_leffler:
      return mittag_leffler_is_exp(spec) || mittag_leffler_is_cosh(spec) ||
             mittag_leffler_complex_asymptotic(spec, r);
    default:
      return false;
  }
}

}  // namespace

ComplexKernelValue log_kernel(const KernelSpec& spec, double r, double theta) {
  if (!(r >= 0.0)) {
    throw ConfigError("kernel radius must be nonnegative");
  }
  theta = wrap_angle(theta);
  if (theta == 0.0 || r == 0.0) {
    return {{log_kernel(spec, r), 0.0}, 0.0, false};
  }
  if (has_complex_closed_form(spec, r)) {
    return closed_log_kernel(spec, r, theta, log_kernel(spec, r));
  }
  return series_log_kernel(spec, r, theta);
}

double normalized_kernel_sq(const KernelSpec& spec, std::complex<double> z, std::complex<double> w) {
  const double u = std::abs(z);
  const double v = std::abs(w);
  const double theta = (u == 0.0 || v == 0.0) ? 0.0 : wrap_angle(std::arg(z) - std::arg(w));
  const double log_cross = log_kernel(spec, u * v, theta).value.log_mod;
  if (log_cross == kNegInf) {
    return 0.0;
  }
  const double log_ratio = 2.0 * log_cross - log_kernel(spec, u * u) - log_kernel(spec, v * v);
  const double value = std::exp(log_ratio);
  if (value > 1.0 + 1e-10) {
    throw KernelBoundViolated("normalized_kernel_sq", spec.name() + ": |J|^2 = " + std::to_string(value));
  }
  return std::min(value, 1.0);
}

double first_intensity(const KernelSpec& spec, std::complex<double> z) {
  const double u = std::norm(z);
  if (u > 0.0) {
    return hayman_b(spec, u) / u / std::numbers::pi;
  }
  // a'(0) = a_{m+1}^2 / a_m^2 for the first nonzero coefficient a_m
  for (std::size_t m = 0; m + 1 < std::min<std::size_t>(spec.coefficient_count(), kMaxSeriesTerms); ++m) {
    const double c = spec.log_sq_coeff(m);
    if (c != kNegInf) {
      return std::exp(spec.log_sq_coeff(m + 1) - c) / std::numbers::pi;
    }
  }
  throw NumericalError("first_intensity", spec.name() + ": all coefficients vanish");
}

double expected_zero_count(const KernelSpec& spec, double radius) { return hayman_a(spec, radius * radius); }

double log_hayman_b(const KernelSpec& spec, double r) {
  if (spec.family() == Family::double_exp && r > 0.0) {
    return r + std::log(r * (r + 1.0));
  }
  return std::log(hayman_b(spec, r));
}

LowerOrderEstimate lower_order_estimate(const KernelSpec& spec, std::span<const double> r_grid) {
  if (r_grid.size() < 8) {
    throw GridTooSmall("lower_order_estimate needs at least 8 grid points");
  }
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    if (!(r_grid[i] > 1.0) || (i > 0 && !(r_grid[i] > r_grid[i - 1]))) {
      throw GridTooSmall("lower_order_estimate needs an increasing grid of radii > 1");
    }
  }
  if (r_grid.back() / r_grid.front() < 1e4 * (1.0 - 1e-12)) {
    throw GridTooSmall("lower_order_estimate needs a grid spanning at least 4 decades");
  }
  LowerOrderEstimate out;
  for (double r : r_grid) {
    out.ratios.push_back(log_hayman_b(spec, r) / std::log(r));
  }
  const std::size_t start = r_grid.size() / 2;
  out.estimate = *std::min_element(out.ratios.begin() + static_cast<std::ptrdiff_t>(start), out.ratios.end());
  bool increasing = true;
  for (std::size_t i = start + 1; i < out.ratios.size(); ++i) {
    increasing = increasing && out.ratios[i] > out.ratios[i - 1];
  }
  out.diverging = increasing && out.ratios.back() >= 1.25 * out.ratios[start];
  return out;
}

}  // namespace gaf
