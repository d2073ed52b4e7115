#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gaf/admissibility.hpp"
#include "gaf/errors.hpp"
#include "gaf/kernel.hpp"
#include "gaf/linstat.hpp"
#include "gaf/parallel.hpp"
#include "gaf/philox.hpp"
#include "gaf/rigidity.hpp"
#include "gaf/sampler.hpp"
#include "gaf/zerofinder.hpp"
#include "output.hpp"

namespace gaflab {

using json = nlohmann::json;
namespace fs = std::filesystem;

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw gaf::ConfigError("cannot read config file " + path);
  }
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  int number = 0;
  auto trim = [](std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
      return std::string{};
    }
    return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
  };
  while (std::getline(in, line)) {
    ++number;
    line = trim(line);
    if (line.empty() || line[0] == '#') {
      continue;
    }
    const auto eq = line.find('=');
    const std::string key = eq == std::string::npos ? "" : trim(line.substr(0, eq));
    if (key.empty()) {
      throw gaf::ConfigError(path + ":" + std::to_string(number) + ": expected key=value");
    }
    entries.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return entries;
}

namespace {

// Keys that change where or how fast a run happens but never what it computes.
bool echoed(const std::string& name) { return name != "config" && name != "threads" && name != "output-dir"; }

ConfigEcho echo_of(const CLI::App& app) {
  ConfigEcho echo;
  for (const CLI::Option* opt : app.get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help" || !echoed(name)) {
      continue;
    }
    echo[name] = opt->count() > 0 ? opt->results().back() : opt->get_default_str();
  }
  return echo;
}

json header_json(const ConfigEcho& echo) {
  json config = json::object();
  for (const auto& [k, v] : echo) {
    config[k] = v;
  }
  return json{{"version", kVersion}, {"config", config}};
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json points_json(const std::vector<std::complex<double>>& points) {
  json out = json::array();
  for (const auto& z : points) {
    out.push_back(complex_json(z));
  }
  return out;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0 && hi >= lo) || n < 1) {
    throw gaf::ConfigError("grid needs 0 < min <= max and at least one point");
  }
  std::vector<double> grid;
  for (int i = 0; i < n; ++i) {
    grid.push_back(n == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  }
  return grid;
}

fs::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw gaf::ConfigError("cannot create output directory " + dir);
  }
  return fs::path(dir);
}

struct Common {
  std::string family = "gef";
  std::string output_dir = "gaflab-out";
  unsigned threads = 1;
  std::uint64_t seed = 1;
  double tail_tol = gaf::kDefaultTailTol;
};

void add_family(CLI::App* app, Common& c) {
  app->add_option("--family", c.family, "gef | mittag-leffler:A | double-exp | lindelof:A | custom:PATH")
      ->capture_default_str();
}
void add_output(CLI::App* app, Common& c) {
  app->add_option("--output-dir", c.output_dir, "directory for reports")->capture_default_str();
}
void add_sampling(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "master seed")->capture_default_str();
  app->add_option("--tail-tol", c.tail_tol, "relative tail variance of the truncation")->capture_default_str();
  app->add_option("--threads", c.threads, "worker threads, 0 = all cores")->capture_default_str();
}

// ---- kernel-info ----

struct KernelInfoArgs {
  double r = 1.0;
};

void kernel_info(const Common& c, const KernelInfoArgs& a, const ConfigEcho& echo, std::ostream& out) {
  const gaf::KernelSpec spec = gaf::KernelSpec::parse(c.family);
  if (!(a.r > 0.0)) {
    throw gaf::ConfigError("--r must be positive");
  }
  const gaf::KernelMoments m = gaf::kernel_moments(spec, a.r);
  const double rho1 = gaf::first_intensity(spec, std::sqrt(a.r));
  out << "kernel " << spec.name() << "\n"
      << "log G(" << format_number(a.r) << ") = " << format_number(m.log_g) << "\n"
      << "a(" << format_number(a.r) << ") = " << format_number(m.a) << "\n"
      << "b(" << format_number(a.r) << ") = " << format_number(m.b) << "\n"
      << "rho1(|z|^2 = " << format_number(a.r) << ") = " << format_number(rho1) << "\n";
  json report = header_json(echo);
  report["kernel"] = spec.name();
  report["r"] = a.r;
  report["log_G"] = m.log_g;
  report["a"] = m.a;
  report["b"] = m.b;
  report["rho1"] = rho1;
  report["closed_form"] = gaf::has_closed_form(spec, a.r);
  write_file(prepare_dir(c.output_dir) / "kernel-info.json", report.dump(2) + "\n");
}

// ---- admissibility ----

struct AdmissibilityArgs {
  double r_min = 2.0;
  double r_max = 64.0;
  int points = 6;
  double t_min = -2.0;
  double t_max = 4.0;
  int t_points = 128;
};

void admissibility(const Common& c, const AdmissibilityArgs& a, const ConfigEcho& echo, std::ostream& out) {
  const gaf::KernelSpec spec = gaf::KernelSpec::parse(c.family);
  const std::vector<double> r_grid = log_grid(a.r_min, a.r_max, a.points);
  const std::vector<double> t_grid = gaf::uniform_grid(a.t_min, a.t_max, a.t_points);
  const gaf::AdmissibilityReport rep = gaf::admissibility_report(spec, r_grid, t_grid);

  json report = header_json(echo);
  report["kernel"] = spec.name();
  report["convexity_min_second_difference"] = rep.convexity_min;
  report["convexity_scale"] = rep.convexity_scale;
  report["b_divergent"] = rep.b_divergent;
  json rows = json::array();
  std::ostringstream csv;
  for (const auto& row : rep.rows) {
    rows.push_back({{"r", row.r},
                    {"a", row.a},
                    {"b", row.b},
                    {"delta_hat", row.delta_hat},
                    {"major_arc_err", row.major_arc_err},
                    {"minor_arc_ratio", row.minor_arc_ratio},
                    {"minor_arc_ratio_quarter", row.minor_arc_ratio_quarter},
                    {"claim1_ratio", row.claim1_ratio},
                    {"precision_loss", row.precision_loss}});
    csv << format_number(row.r) << "," << format_number(row.a) << "," << format_number(row.b) << ","
        << format_number(row.delta_hat) << "," << format_number(row.major_arc_err) << ","
        << format_number(row.minor_arc_ratio) << "," << format_number(row.minor_arc_ratio_quarter) << ","
        << format_number(row.claim1_ratio) << "," << (row.precision_loss ? 1 : 0) << "\n";
  }
  report["rows"] = rows;
  const fs::path dir = prepare_dir(c.output_dir);
  write_file(dir / "admissibility.json", report.dump(2) + "\n");
  write_file(dir / "admissibility.csv",
             csv_preamble(echo) +
                 "r,a,b,delta_hat,major_arc_err,minor_arc_ratio,minor_arc_ratio_quarter,claim1_ratio,precision_loss\n" +
                 csv.str());
  out << "admissibility " << spec.name() << ": " << rep.rows.size() << " radii, convexity min "
      << format_number(rep.convexity_min) << ", b divergent " << (rep.b_divergent ? "yes" : "no") << "\n";
}

// ---- sample-zeros ----

struct SampleZerosArgs {
  double radius = 2.0;
  std::size_t samples = 1;
};

void sample_zeros(const Common& c, const SampleZerosArgs& a, const ConfigEcho& echo, std::ostream& out) {
  const gaf::KernelSpec spec = gaf::KernelSpec::parse(c.family);
  if (a.samples < 1) {
    throw gaf::ConfigError("--samples must be at least 1");
  }
  const auto plan = gaf::make_plan(spec, a.radius, c.tail_tol);
  std::vector<gaf::ZeroSet> sets(a.samples);
  gaf::parallel_for(a.samples, c.threads, [&](std::size_t i) {
    sets[i] = gaf::zeros_in_disk(gaf::SampledFunction(plan, gaf::derive_seed(c.seed, i)), a.radius);
  });
  std::ostringstream csv;
  json counts = json::array();
  double total = 0.0;
  for (const auto& zs : sets) {
    for (std::size_t j = 0; j < zs.points.size(); ++j) {
      csv << zs.seed << "," << format_number(zs.points[j].real()) << "," << format_number(zs.points[j].imag()) << ","
          << format_number(zs.residuals[j]) << "\n";
    }
    counts.push_back({{"sample_seed", zs.seed}, {"count", zs.certified_count}, {"disk_radius", zs.disk_radius}});
    total += zs.certified_count;
  }
  json report = header_json(echo);
  report["kernel"] = spec.name();
  report["degree"] = plan->degree;
  report["valid_radius"] = plan->valid_radius;
  report["expected_count"] = gaf::expected_zero_count(spec, a.radius);
  report["mean_count"] = total / static_cast<double>(a.samples);
  report["samples"] = counts;
  const fs::path dir = prepare_dir(c.output_dir);
  write_file(dir / "zeros.csv", csv_preamble(echo) + "sample_seed,re,im,residual\n" + csv.str());
  write_file(dir / "zeros.json", report.dump(2) + "\n");
  out << "sample-zeros " << spec.name() << ": " << a.samples << " samples, mean count "
      << format_number(total / static_cast<double>(a.samples)) << ", expected "
      << format_number(gaf::expected_zero_count(spec, a.radius)) << "\n";
}

// ---- variance ----

struct VarianceArgs {
  int k = 0;
  double eta = 0.5;
  std::string L_list = "2";
  std::size_t trials = 10000;
  bool quadrature = true;
  bool bound = true;
  bool plot = false;
};

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos) {
      throw gaf::ConfigError(flag + ": not a number: '" + item + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) {
    throw gaf::ConfigError(flag + " needs at least one value");
  }
  return values;
}

void variance(const Common& c, const VarianceArgs& a, const ConfigEcho& echo, std::ostream& out) {
  const gaf::KernelSpec spec = gaf::KernelSpec::parse(c.family);
  const std::vector<double> Ls = parse_list(a.L_list, "--l");
  std::vector<gaf::TestFunction> tfs;
  for (double L : Ls) {
    tfs.emplace_back(a.k, a.eta, L);
  }
  json reports = json::array();
  std::ostringstream rows;
  Series mc{"Monte Carlo", "#1f77b4", {}, {}};
  Series quad{"quadrature", "#2ca02c", {}, {}};
  Series bnd{"bound", "#d62728", {}, {}};
  for (const auto& tf : tfs) {
    const gaf::VarianceEstimate est = gaf::variance_mc(spec, tf, a.trials, c.seed, c.threads, c.tail_tol);
    const double q = a.quadrature ? gaf::variance_quadrature(spec, tf) : std::nan("");
    const double b = a.bound ? gaf::variance_bound(spec, tf) : std::nan("");
    const bool agree = a.quadrature ? std::abs(est.variance - q) <= 3.0 * est.std_error : false;
    reports.push_back({{"k", tf.k()},
                       {"eta", tf.eta()},
                       {"L", tf.L()},
                       {"mc_estimate", est.variance},
                       {"mc_stderr", est.std_error},
                       {"mc_mean", complex_json(est.mean)},
                       {"expected_statistic", complex_json(gaf::expected_statistic(spec, tf))},
                       {"quadrature_value", q},
                       {"bound_value", b},
                       {"trials", est.trials},
                       {"failed_trials", est.failed},
                       {"seed", c.seed},
                       {"mc_within_3_stderr_of_quadrature", agree}});
    rows << spec.name() << "," << tf.k() << "," << format_number(tf.eta()) << "," << format_number(tf.L()) << ","
         << est.trials << "," << est.failed << "," << c.seed << "," << format_number(est.variance) << ","
         << format_number(est.std_error) << "," << format_number(q) << "," << format_number(b) << "\n";
    mc.y.push_back(est.variance);
    mc.error.push_back(est.std_error);
    quad.y.push_back(q);
    bnd.y.push_back(b);
    out << "variance k=" << tf.k() << " eta=" << format_number(tf.eta()) << " L=" << format_number(tf.L())
        << ": mc " << format_number(est.variance) << " +- " << format_number(est.std_error) << ", quadrature "
        << format_number(q) << ", bound " << format_number(b) << "\n";
  }
  json report = header_json(echo);
  report["kernel"] = spec.name();
  report["reports"] = reports;
  const fs::path dir = prepare_dir(c.output_dir);
  write_file(dir / "variance.json", report.dump(2) + "\n");
  append_csv(dir / "variance.csv", csv_preamble(echo),
             "family,k,eta,L,trials,failed,seed,mc_estimate,mc_stderr,quadrature_value,bound_value", rows.str());
  if (a.plot) {
    std::vector<Series> series{mc};
    if (a.quadrature) {
      series.push_back(quad);
    }
    if (a.bound) {
      series.push_back(bnd);
    }
    write_file(dir / "variance.svg", svg_loglog("Var of the linear statistic, " + spec.name(), "L", Ls, series, echo));
  }
}

// ---- rigidity ----

struct RigidityArgs {
  double d_radius = 1.0;
  int k_max = 2;
  double eta = 0.5;
  std::size_t trials = 100;
  std::size_t svg_trials = 10;
};

json level_json(const gaf::KernelSpec& spec, int k_max) {
  try {
    const std::vector<double> grid = log_grid(10.0, 1e5, 16);
    const gaf::LowerOrderEstimate est = gaf::lower_order_estimate(spec, grid);
    json out{{"lower_order_estimate", est.estimate}, {"diverging", est.diverging}};
    if (!est.diverging) {
      // k < B is covered; k in [B, B + 1) is reported, not asserted
      json unverified = json::array();
      for (int k = 0; k <= k_max; ++k) {
        if (k >= est.estimate) {
          unverified.push_back(k);
        }
      }
      out["k_outside_guaranteed_level"] = unverified;
    }
    return out;
  } catch (const std::exception& e) {
    return json{{"unavailable", e.what()}};
  }
}

void rigidity(const Common& c, const RigidityArgs& a, const ConfigEcho& echo, std::ostream& out, std::ostream& err) {
  gaf::RigidityConfig cfg;
  cfg.spec = gaf::KernelSpec::parse(c.family);
  cfg.d_radius = a.d_radius;
  cfg.k_max = a.k_max;
  cfg.eta = a.eta;
  cfg.trials = a.trials;
  cfg.seed = c.seed;
  cfg.threads = c.threads;
  cfg.tail_tol = c.tail_tol;
  const gaf::RecoveryReport rep = gaf::rigidity_experiment(cfg);

  json report = header_json(echo);
  report["kernel"] = cfg.spec.name();
  report["level"] = level_json(cfg.spec, cfg.k_max);
  report["failed_trials"] = rep.failed;
  report["count_success_rate"] = rep.count_success_rate;
  report["rms_error"] = rep.rms_error;
  json bias = json::array();
  for (std::size_t k = 0; k < rep.mean_error.size(); ++k) {
    bias.push_back({{"k", k}, {"mean", complex_json(rep.mean_error[k])}, {"stderr", rep.mean_error_stderr[k]}});
  }
  report["mean_error"] = bias;
  report["matched_trials"] = rep.matched_trials;
  report["mean_matching_distance"] = rep.mean_matching_distance;
  report["median_matching_distance"] = rep.median_matching_distance;
  json trials = json::array();
  std::ostringstream csv;
  std::size_t ill = 0;
  for (const auto& t : rep.trials) {
    json rec{{"index", t.index}, {"seed", t.seed}, {"failed", t.failed}};
    if (t.failed) {
      rec["failure"] = t.failure;
    } else {
      rec["true_count"] = t.true_count;
      rec["recovered_count"] = t.recovered_count;
      rec["count_rounding"] = t.count_rounding;
      rec["true_power_sums"] = points_json(t.true_sums);
      rec["recovered_power_sums"] = points_json(t.recovered_sums);
      rec["true_points"] = points_json(t.true_points);
      rec["reconstructed_points"] = points_json(t.reconstructed);
      rec["ill_conditioned"] = t.ill_conditioned;
      rec["matching_distance"] = t.matching_distance;
      rec["identity_error"] = t.identity_error;
      ill += t.ill_conditioned ? 1 : 0;
    }
    trials.push_back(rec);
    csv << t.index << "," << t.seed << "," << (t.failed ? 1 : 0) << "," << t.true_count << "," << t.recovered_count
        << "," << format_number(t.count_rounding) << "," << format_number(t.matching_distance) << ","
        << format_number(t.identity_error) << "," << (t.ill_conditioned ? 1 : 0);
    for (int k = 0; k <= cfg.k_max; ++k) {
      const auto ks = static_cast<std::size_t>(k);
      const auto s = t.failed ? std::complex<double>(std::nan(""), std::nan("")) : t.true_sums[ks];
      const auto r = t.failed ? std::complex<double>(std::nan(""), std::nan("")) : t.recovered_sums[ks];
      csv << "," << format_number(s.real()) << "," << format_number(s.imag()) << "," << format_number(r.real())
          << "," << format_number(r.imag());
    }
    csv << "\n";
  }
  report["trials"] = trials;
  std::string header = "index,seed,failed,true_count,recovered_count,count_rounding,matching_distance,identity_error,"
                       "ill_conditioned";
  for (int k = 0; k <= cfg.k_max; ++k) {
    const std::string ks = std::to_string(k);
    header += ",S" + ks + "_re,S" + ks + "_im,S" + ks + "_hat_re,S" + ks + "_hat_im";
  }
  const fs::path dir = prepare_dir(c.output_dir);
  write_file(dir / "rigidity.json", report.dump(2) + "\n");
  write_file(dir / "rigidity_trials.csv", csv_preamble(echo) + header + "\n" + csv.str());
  std::size_t drawn = 0;
  for (const auto& t : rep.trials) {
    if (drawn >= a.svg_trials) {
      break;
    }
    if (t.failed) {
      continue;
    }
    char name[64];
    std::snprintf(name, sizeof name, "rigidity_trial_%03zu.svg", t.index);
    write_file(dir / name, svg_zero_overlay("trial " + std::to_string(t.index) + ": true vs reconstructed zeros",
                                            t.true_points, t.reconstructed, cfg.d_radius, echo));
    ++drawn;
  }
  if (ill > 0) {
    err << "warning: IllConditioned Newton recursion in " << ill << " trial(s)\n";
  }
  out << "rigidity " << cfg.spec.name() << ": " << rep.trials.size() - rep.failed << " trials ("
      << rep.failed << " failed), count recovered in " << format_number(rep.count_success_rate) << ", median distance "
      << format_number(rep.median_matching_distance) << "\n";
  for (std::size_t k = 0; k < rep.rms_error.size(); ++k) {
    out << "  rms error S" << k << ": " << format_number(rep.rms_error[k]) << "\n";
  }
}

// Splices `--key value` pairs from a --config file in right after the subcommand,
// so flags given on the command line come later and win.
std::vector<std::string> expand_config(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::vector<std::string> from_file;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) {
        throw gaf::ConfigError("--config needs a path");
      }
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
      continue;
    }
    for (const auto& [key, value] : read_config_file(path)) {
      from_file.push_back("--" + key);
      from_file.push_back(value);
    }
  }
  if (!from_file.empty()) {
    if (rest.empty() || rest[0].rfind("-", 0) == 0) {
      throw gaf::ConfigError("--config needs a subcommand first");
    }
    rest.insert(rest.begin() + 1, from_file.begin(), from_file.end());
  }
  return rest;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian entire functions: kernels, zeros, linear statistics and rigidity", "gaflab"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  Common common;
  KernelInfoArgs ki;
  AdmissibilityArgs ad;
  SampleZerosArgs sz;
  VarianceArgs va;
  RigidityArgs rg;

  auto* cmd_ki = app.add_subcommand("kernel-info", "log G, a, b and the first intensity at one radius");
  add_family(cmd_ki, common);
  cmd_ki->add_option("--r", ki.r, "kernel argument r")->capture_default_str();
  add_output(cmd_ki, common);

  auto* cmd_ad = app.add_subcommand("admissibility", "major/minor arc, claim and convexity diagnostics");
  add_family(cmd_ad, common);
  cmd_ad->add_option("--r-min", ad.r_min)->capture_default_str();
  cmd_ad->add_option("--r-max", ad.r_max)->capture_default_str();
  cmd_ad->add_option("--points", ad.points, "log-spaced radii")->capture_default_str();
  cmd_ad->add_option("--t-min", ad.t_min, "convexity grid start")->capture_default_str();
  cmd_ad->add_option("--t-max", ad.t_max, "convexity grid end")->capture_default_str();
  cmd_ad->add_option("--t-points", ad.t_points)->capture_default_str();
  add_output(cmd_ad, common);

  auto* cmd_sz = app.add_subcommand("sample-zeros", "zeros of sampled functions in a disk");
  add_family(cmd_sz, common);
  cmd_sz->add_option("--radius", sz.radius)->capture_default_str();
  cmd_sz->add_option("--samples", sz.samples)->capture_default_str();
  add_sampling(cmd_sz, common);
  add_output(cmd_sz, common);

  auto* cmd_va = app.add_subcommand("variance", "variance of a linear statistic by Monte Carlo and quadrature");
  add_family(cmd_va, common);
  cmd_va->add_option("--k", va.k)->capture_default_str();
  cmd_va->add_option("--eta", va.eta)->capture_default_str();
  cmd_va->add_option("--l", va.L_list, "one or more L values, comma separated")->capture_default_str();
  cmd_va->add_option("--trials", va.trials)->capture_default_str();
  cmd_va->add_option("--quadrature", va.quadrature, "true | false")->capture_default_str();
  cmd_va->add_option("--bound", va.bound, "true | false")->capture_default_str();
  cmd_va->add_option("--plot", va.plot, "write variance.svg (true | false)")->capture_default_str();
  add_sampling(cmd_va, common);
  add_output(cmd_va, common);

  auto* cmd_rg = app.add_subcommand("rigidity", "recover the zeros inside a disk from those outside");
  add_family(cmd_rg, common);
  cmd_rg->add_option("--d-radius", rg.d_radius)->capture_default_str();
  cmd_rg->add_option("--k-max", rg.k_max)->capture_default_str();
  cmd_rg->add_option("--eta", rg.eta)->capture_default_str();
  cmd_rg->add_option("--trials", rg.trials)->capture_default_str();
  cmd_rg->add_option("--svg-trials", rg.svg_trials, "overlay plots for the first N trials")->capture_default_str();
  add_sampling(cmd_rg, common);
  add_output(cmd_rg, common);

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "gaflab: " << e.what() << "\n";
    return 2;
  } catch (const gaf::ConfigError& e) {
    err << "gaflab: config error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (cmd_ki->parsed()) {
      kernel_info(common, ki, echo_of(*cmd_ki), out);
    } else if (cmd_ad->parsed()) {
      admissibility(common, ad, echo_of(*cmd_ad), out);
    } else if (cmd_sz->parsed()) {
      sample_zeros(common, sz, echo_of(*cmd_sz), out);
    } else if (cmd_va->parsed()) {
      variance(common, va, echo_of(*cmd_va), out);
    } else if (cmd_rg->parsed()) {
      rigidity(common, rg, echo_of(*cmd_rg), out, err);
    }
  } catch (const gaf::ConfigError& e) {
    err << "gaflab: config error: " << e.what() << "\n";
    return 2;
  } catch (const gaf::NumericalError& e) {
    err << "gaflab: numerical failure in " << e.operation() << ": " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace gaflab
