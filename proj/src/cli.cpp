#include "tifem/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <regex>
#include <sstream>

#include <fmt/format.h>

#include "tifem/benchmarks.hpp"
#include "tifem/errors.hpp"
#include "tifem/material.hpp"

namespace tifem {

namespace {

std::string num(double v) { return fmt::format("{:.17g}", v); }

double parse_number(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("not a number: " + s);
  return v;
}

void add_options(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("--E-t", cfg.E_t, "Transverse Young's modulus");
  sub.add_option("--p", cfg.p, "Moduli ratio E_l/E_t (comma-separated list)")->delimiter(',');
  sub.add_option("--q", cfg.q, "Shear ratio mu_l/mu_t");
  sub.add_option("--nu-t", cfg.nu_t, "Transverse Poisson ratio");
  sub.add_option("--nu-l", cfg.nu_l, "Longitudinal Poisson ratio");
  sub.add_option("--seed", cfg.seed, "Seed for randomized checks");
  sub.add_flag("--strict", cfg.strict, "Reject inadmissible materials before any work");
  sub.add_option("--out", cfg.out, "Output file (default: stdout)");
}

void add_benchmark_options(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("--angles", cfg.angles, "Fibre angles in radians, e.g. 0,pi/8,3pi/4")->delimiter(',');
  sub.add_option("--variants", cfg.variants, "Formulation variants")->delimiter(',');
  sub.add_option("--refine", cfg.refine, "Refinement levels")->delimiter(',');
}

std::ostream* open_output(const RunConfig& cfg, std::ostream& out, std::ofstream& file) {
  if (cfg.out.empty() || cfg.out == "-") return &out;
  file.open(cfg.out, std::ios::binary);
  return file ? &file : nullptr;
}

// --- stability -------------------------------------------------------------

int cmd_stability(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<double> ps, nus;
  try {
    ps = parse_grid_range(cfg.p_range.empty() ? "0:5:200" : cfg.p_range);
    nus = parse_grid_range(cfg.nu_range.empty() ? "-1:1:200" : cfg.nu_range);
  } catch (const std::exception& e) {
    err << "malformed grid: " << e.what() << '\n';
    return kExitParseError;
  }
  std::ofstream file;
  std::ostream* os = open_output(cfg, out, file);
  if (!os) {
    err << "cannot open " << cfg.out << '\n';
    return kExitParseError;
  }
  *os << "p,nu,admissible";
  for (StabilityCondition c : kAllStabilityConditions) *os << ',' << to_string(c);
  *os << '\n';
  for (double p : ps) {
    for (double nu : nus) {
      const StabilityVerdict v = check_stability({cfg.E_t.value_or(1.0), p, cfg.q.value_or(1.0), nu, nu});
      *os << num(p) << ',' << num(nu) << ',' << (v.admissible ? 1 : 0);
      for (StabilityCondition c : kAllStabilityConditions) *os << ',' << (v.violates(c) ? 0 : 1);
      *os << '\n';
    }
  }
  return kExitOk;
}

// --- material --------------------------------------------------------------

// Smallest eps:C eps / |eps|^2 over random symmetric 3D strains, fibre e3.
double sampled_min_energy(const MaterialParameters& mp, int samples, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double lowest = std::numeric_limits<double>::infinity();
  const Eigen::Vector3d fibre = Eigen::Vector3d::UnitZ();
  for (int s = 0; s < samples; ++s) {
    Eigen::Matrix3d e;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) e(i, j) = e(j, i) = dist(rng);
    const Eigen::Matrix3d sigma = stiffness_apply(mp, fibre, e);
    lowest = std::min(lowest, (sigma.array() * e.array()).sum() / e.squaredNorm());
  }
  return lowest;
}

int cmd_material(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  std::ostream* os = open_output(cfg, out, file);
  if (!os) {
    err << "cannot open " << cfg.out << '\n';
    return kExitParseError;
  }
  const std::vector<double> ps = cfg.p.empty() ? std::vector<double>{1.0} : cfg.p;
  std::mt19937_64 rng(cfg.seed);
  int code = kExitOk;
  *os << "E_t,p,q,nu_t,nu_l,lambda,mu_t,mu_l,alpha,beta,gamma,admissible,violated,discriminant,c1,"
         "min_energy\n";
  for (double p : ps) {
    const EngineeringConstants ec{cfg.E_t.value_or(1.0), p, cfg.q.value_or(1.0), cfg.nu_t.value_or(0.0),
                                  cfg.nu_l.value_or(0.0)};
    const StabilityVerdict v = check_stability(ec);
    std::string violated;
    for (StabilityCondition c : v.violated) violated += (violated.empty() ? "" : ";") + std::string(to_string(c));
    *os << num(ec.E_t) << ',' << num(p) << ',' << num(ec.q) << ',' << num(ec.nu_t) << ','
        << num(ec.nu_l) << ',';
    try {
      const MaterialParameters mp = derive_parameters(ec);
      *os << num(mp.lambda) << ',' << num(mp.mu_t) << ',' << num(mp.mu_l) << ',' << num(mp.alpha)
          << ',' << num(mp.beta) << ',' << num(mp.gamma) << ',';
      *os << (v.admissible ? 1 : 0) << ',' << violated << ','
          << (v.discriminant ? num(*v.discriminant) : "") << ',' << num(error_bound_constant(mp)) << ','
          << (cfg.samples > 0 ? num(sampled_min_energy(mp, cfg.samples, rng)) : "") << '\n';
    } catch (const DegenerateDenominator& e) {
      *os << ",,,,,," << (v.admissible ? 1 : 0) << ',' << violated << ",,,\n";
      err << "p=" << num(p) << ": " << e.what() << '\n';
      code = kExitDegenerateMaterial;
    }
    if (cfg.strict && !v.admissible && code == kExitOk) code = kExitParseError;
  }
  return code;
}

// --- benchmarks ------------------------------------------------------------

template <typename Config>
int fill_benchmark(const RunConfig& rc, Config& bc, std::ostream& err) {
  if (rc.E_t) bc.E_t = *rc.E_t;
  if (!rc.p.empty()) bc.p_list = rc.p;
  if (rc.q) bc.q = *rc.q;
  if (rc.nu_t) bc.nu_t = *rc.nu_t;
  if (rc.nu_l) bc.nu_l = *rc.nu_l;
  if (!rc.refine.empty()) bc.refinements = rc.refine;
  try {
    if (!rc.angles.empty()) {
      bc.angles.clear();
      for (const auto& a : rc.angles) bc.angles.push_back(parse_angle(a));
    }
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kExitParseError;
  }
  if (!rc.variants.empty()) {
    bc.variants.clear();
    for (const auto& name : rc.variants) {
      const auto v = parse_variant(name);
      if (!v) {
        err << "unknown variant: " << name << '\n';
        return kExitParseError;
      }
      bc.variants.push_back(*v);
    }
  }
  for (int r : bc.refinements) {
    if (r < 1) {
      err << "refinement levels must be positive\n";
      return kExitParseError;
    }
  }
  if (rc.strict) {
    for (double p : bc.p_list) {
      const StabilityVerdict v = check_stability({bc.E_t, p, bc.q, bc.nu_t, bc.nu_l});
      if (!v.admissible) {
        err << "inadmissible material at p=" << num(p) << '\n';
        return kExitParseError;
      }
    }
  }
  return kExitOk;
}

template <typename Config, typename Runner>
int cmd_benchmark(const RunConfig& rc, Config bc, Runner run, std::ostream& out, std::ostream& err) {
  if (const int code = fill_benchmark(rc, bc, err); code != kExitOk) return code;
  std::ofstream file;
  std::ostream* os = open_output(rc, out, file);
  if (!os) {
    err << "cannot open " << rc.out << '\n';
    return kExitParseError;
  }
  const ErrorReport report = run(bc);
  write_report_csv(*os, report);
  return report.all_ok() ? kExitOk : kExitPartialFailure;
}

}  // namespace

double parse_angle(std::string_view text) {
  static const std::regex pi_form(R"(^\s*([+-]?)(\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(\d+\.?\d*))?\s*$)");
  const std::string s(text);
  std::smatch m;
  if (std::regex_match(s, m, pi_form)) {
    const double sign = m[1] == "-" ? -1.0 : 1.0;
    const double k = m[2].length() ? parse_number(m[2]) : 1.0;
    const double d = m[3].matched ? parse_number(m[3]) : 1.0;
    if (d == 0.0) throw std::invalid_argument("zero divisor in angle: " + s);
    return sign * k * std::numbers::pi / d;
  }
  try {
    return parse_number(s);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed angle: " + s);
  }
}

std::vector<double> parse_grid_range(std::string_view text) {
  const std::string s(text);
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 3) throw std::invalid_argument("expected lo:hi:n, got '" + s + "'");
  const double lo = parse_number(parts[0]);
  const double hi = parse_number(parts[1]);
  std::size_t used = 0;
  const int n = std::stoi(parts[2], &used);
  if (used != parts[2].size() || n < 1) throw std::invalid_argument("bad point count in '" + s + "'");
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo))
    throw std::invalid_argument("grid bounds must be finite with lo < hi");
  std::vector<double> pts(n);
  for (int i = 0; i < n; ++i) pts[i] = lo + (hi - lo) * (i + 0.5) / n;
  return pts;
}

std::optional<RunConfig> parse_run_config(int argc, const char* const* argv, std::ostream& out,
                                          std::ostream& err, int& exit_code) {
  RunConfig cfg;
  CLI::App app{"Plane-strain finite elements for transversely isotropic elasticity"};
  app.set_config("--config", "", "Key-value config file; command-line flags take precedence");
  app.require_subcommand(1);
  bool dump = false;

  auto* stability = app.add_subcommand("stability", "Scan the admissible (p, nu) region, nu_l = nu_t = nu");
  add_options(*stability, cfg);
  stability->add_option("--p-range", cfg.p_range, "lo:hi:n grid over p (default 0:5:200)");
  stability->add_option("--nu-range", cfg.nu_range, "lo:hi:n grid over nu (default -1:1:200)");

  auto* material = app.add_subcommand("material", "Material parameters, stability verdict and C1");
  add_options(*material, cfg);
  material->add_option("--samples", cfg.samples, "Random strains for a positive-energy check");

  auto* cook = app.add_subcommand("cook", "Cook's membrane tip-displacement study");
  add_options(*cook, cfg);
  add_benchmark_options(*cook, cfg);

  auto* beam = app.add_subcommand("beam", "Beam bending study against the closed-form solution");
  add_options(*beam, cfg);
  add_benchmark_options(*beam, cfg);

  for (auto* sub : {stability, material, cook, beam}) {
    sub->configurable();
    sub->add_flag("--dump-config", dump, "Print the effective configuration and exit")->configurable(false);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    exit_code = e.get_exit_code() == 0 ? kExitOk : kExitParseError;
    app.exit(e, out, err);
    return std::nullopt;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  if (dump) {
    out << serialize_run_config(cfg);
    exit_code = kExitOk;
    return std::nullopt;
  }
  return cfg;
}

std::string serialize_run_config(const RunConfig& cfg) {
  std::ostringstream os;
  auto list = [&](const char* key, const auto& values, auto fmt_one) {
    if (values.empty()) return;
    os << key << "=[";
    for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << fmt_one(values[i]);
    os << "]\n";
  };
  auto quoted = [](const std::string& s) { return "\"" + s + "\""; };
  os << '[' << cfg.subcommand << "]\n";
  if (cfg.E_t) os << "E-t=" << num(*cfg.E_t) << '\n';
  list("p", cfg.p, num);
  if (cfg.q) os << "q=" << num(*cfg.q) << '\n';
  if (cfg.nu_t) os << "nu-t=" << num(*cfg.nu_t) << '\n';
  if (cfg.nu_l) os << "nu-l=" << num(*cfg.nu_l) << '\n';
  list("angles", cfg.angles, quoted);
  list("variants", cfg.variants, quoted);
  list("refine", cfg.refine, [](int v) { return std::to_string(v); });
  if (!cfg.out.empty()) os << "out=" << quoted(cfg.out) << '\n';
  if (cfg.seed != 0) os << "seed=" << cfg.seed << '\n';
  if (cfg.strict) os << "strict=true\n";
  if (!cfg.p_range.empty()) os << "p-range=" << quoted(cfg.p_range) << '\n';
  if (!cfg.nu_range.empty()) os << "nu-range=" << quoted(cfg.nu_range) << '\n';
  if (cfg.samples != 0) os << "samples=" << cfg.samples << '\n';
  return os.str();
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  int code = kExitOk;
  const auto cfg = parse_run_config(argc, argv, out, err, code);
  if (!cfg) return code;
  if (cfg->subcommand == "stability") return cmd_stability(*cfg, out, err);
  if (cfg->subcommand == "material") return cmd_material(*cfg, out, err);
  if (cfg->subcommand == "cook") return cmd_benchmark(*cfg, CookConfig{}, run_cook, out, err);
  if (cfg->subcommand == "beam") return cmd_benchmark(*cfg, BeamConfig{}, run_beam, out, err);
  return kExitParseError;
}

}  // namespace tifem
