#include "output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "gaf/errors.hpp"

namespace gaflab {

std::string echo_line(const ConfigEcho& echo) {
  std::string out;
  for (const auto& [key, value] : echo) {
    if (!out.empty()) {
      out += "; ";
    }
    out += key + "=" + value;
  }
  return out;
}

std::string csv_preamble(const ConfigEcho& echo) {
  return std::string("# ") + kVersion + "\n# config: " + echo_line(echo) + "\n";
}

std::string format_number(double x) {
  if (std::isnan(x)) {
    return "nan";
  }
  if (std::isinf(x)) {
    return x > 0 ? "inf" : "-inf";
  }
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, result.ptr);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) {
    throw gaf::ConfigError("cannot write " + path.string());
  }
}

void append_csv(const std::filesystem::path& path, const std::string& preamble, const std::string& header,
                const std::string& rows) {
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (fresh) {
    out << preamble << header << "\n";
  }
  out << rows;
  if (!out) {
    throw gaf::ConfigError("cannot write " + path.string());
  }
}

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 60.0;

std::string svg_open(const std::string& title, const ConfigEcho& echo) {
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<!-- " << kVersion << " -->\n"
    << "<!-- config: " << echo_line(echo) << " -->\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
    << title << "</text>\n";
  return s.str();
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

}  // namespace

std::string svg_loglog(const std::string& title, const std::string& x_label, const std::vector<double>& x,
                       const std::vector<Series>& series, const ConfigEcho& echo) {
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) {
      continue;
    }
    xlo = std::min(xlo, std::log10(x[i]));
    xhi = std::max(xhi, std::log10(x[i]));
    for (const auto& s : series) {
      if (i < s.y.size() && s.y[i] > 0.0 && std::isfinite(s.y[i])) {
        ylo = std::min(ylo, std::log10(s.y[i]));
        yhi = std::max(yhi, std::log10(s.y[i]));
      }
    }
  }
  if (!(xhi >= xlo) || !(yhi >= ylo)) {
    xlo = 0.0, xhi = 1.0, ylo = 0.0, yhi = 1.0;
  }
  xlo -= 0.05 * (xhi - xlo) + 0.05, xhi += 0.05 * (xhi - xlo) + 0.05;
  ylo -= 0.1 * (yhi - ylo) + 0.1, yhi += 0.1 * (yhi - ylo) + 0.1;
  auto px = [&](double v) { return kMargin + (std::log10(v) - xlo) / (xhi - xlo) * (kWidth - 2 * kMargin); };
  auto py = [&](double v) {
    return kHeight - kMargin - (std::log10(v) - ylo) / (yhi - ylo) * (kHeight - 2 * kMargin);
  };

  std::ostringstream s;
  s << svg_open(title, echo);
  s << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kWidth - 2 * kMargin << "\" height=\""
    << kHeight - 2 * kMargin << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int d = static_cast<int>(std::ceil(xlo)); d <= static_cast<int>(std::floor(xhi)); ++d) {
    const double v = std::pow(10.0, d);
    s << "<text x=\"" << fmt(px(v)) << "\" y=\"" << kHeight - kMargin + 18
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">1e" << d << "</text>\n";
  }
  for (int d = static_cast<int>(std::ceil(ylo)); d <= static_cast<int>(std::floor(yhi)); ++d) {
    const double v = std::pow(10.0, d);
    s << "<text x=\"" << kMargin - 6 << "\" y=\"" << fmt(py(v) + 4)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1e" << d << "</text>\n";
  }
  s << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 18
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label << "</text>\n";
  double legend_y = kMargin + 16;
  for (const auto& ser : series) {
    std::string path;
    for (std::size_t i = 0; i < x.size() && i < ser.y.size(); ++i) {
      if (!(x[i] > 0.0 && ser.y[i] > 0.0 && std::isfinite(ser.y[i]))) {
        continue;
      }
      path += (path.empty() ? "M" : " L") + fmt(px(x[i])) + " " + fmt(py(ser.y[i]));
      s << "<circle cx=\"" << fmt(px(x[i])) << "\" cy=\"" << fmt(py(ser.y[i])) << "\" r=\"3\" fill=\"" << ser.color
        << "\"/>\n";
      if (i < ser.error.size() && ser.error[i] > 0.0) {
        const double lo = ser.y[i] - ser.error[i];
        const double top = py(ser.y[i] + ser.error[i]);
        const double bottom = lo > 0.0 ? py(lo) : kHeight - kMargin;
        s << "<line x1=\"" << fmt(px(x[i])) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(px(x[i])) << "\" y2=\""
          << fmt(bottom) << "\" stroke=\"" << ser.color << "\"/>\n";
      }
    }
    if (!path.empty()) {
      s << "<path d=\"" << path << "\" fill=\"none\" stroke=\"" << ser.color << "\"/>\n";
    }
    s << "<text x=\"" << kWidth - kMargin - 8 << "\" y=\"" << legend_y
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << ser.color << "\">"
      << ser.label << "</text>\n";
    legend_y += 16;
  }
  s << "</svg>\n";
  return s.str();
}

std::string svg_zero_overlay(const std::string& title, const std::vector<std::complex<double>>& truth,
                             const std::vector<std::complex<double>>& reconstructed, double disk_radius,
                             const ConfigEcho& echo) {
  double extent = 1.2 * disk_radius;
  for (const auto& z : reconstructed) {
    if (std::isfinite(std::abs(z))) {
      extent = std::max(extent, 1.05 * std::max(std::abs(z.real()), std::abs(z.imag())));
    }
  }
  const double side = kHeight - 2 * kMargin;
  const double cx = kWidth / 2;
  const double cy = kHeight / 2 + 10;
  const double scale = side / (2 * extent);
  std::ostringstream s;
  s << svg_open(title, echo);
  s << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << fmt(disk_radius * scale)
    << "\" fill=\"none\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  for (const auto& z : truth) {
    s << "<circle cx=\"" << fmt(cx + z.real() * scale) << "\" cy=\"" << fmt(cy - z.imag() * scale)
      << "\" r=\"5\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n";
  }
  for (const auto& z : reconstructed) {
    if (!std::isfinite(std::abs(z))) {
      continue;
    }
    const double x = cx + z.real() * scale;
    const double y = cy - z.imag() * scale;
    s << "<path d=\"M" << fmt(x - 4) << " " << fmt(y - 4) << " L" << fmt(x + 4) << " " << fmt(y + 4) << " M"
      << fmt(x - 4) << " " << fmt(y + 4) << " L" << fmt(x + 4) << " " << fmt(y - 4)
      << "\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n";
  }
  s << "<text x=\"" << kMargin << "\" y=\"" << kHeight - 16
    << "\" font-family=\"sans-serif\" font-size=\"12\">circles: true zeros; crosses: reconstructed</text>\n";
  s << "</svg>\n";
  return s.str();
}

}  // namespace gaflab
