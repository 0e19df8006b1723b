#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tifem {

/// Effective command-line configuration. Unset optionals take the defaults of
/// the chosen subcommand.
struct RunConfig {
  std::string subcommand;
  std::optional<double> E_t;
  std::vector<double> p;
  std::optional<double> q;
  std::optional<double> nu_t;
  std::optional<double> nu_l;
  std::vector<std::string> angles;
  std::vector<std::string> variants;
  std::vector<int> refine;
  std::string out;
  std::uint64_t seed = 0;
  bool strict = false;
  std::string p_range;
  std::string nu_range;
  int samples = 0;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

enum ExitCode : int {
  kExitOk = 0,
  kExitParseError = 2,
  kExitDegenerateMaterial = 3,
  kExitPartialFailure = 4,
};

/// Angles as decimals or rational multiples of pi: "0", "0.5", "pi",
/// "pi/3", "3pi/8", "-3*pi/4". Throws std::invalid_argument.
double parse_angle(std::string_view text);

/// "lo:hi:n" -> n cell midpoints lo + (hi - lo)(i - 1/2)/n, i = 1..n.
/// Throws std::invalid_argument.
std::vector<double> parse_grid_range(std::string_view text);

/// Parses argv into a RunConfig. Returns nullopt and sets `exit_code` when
/// parsing ends the run (help, errors).
std::optional<RunConfig> parse_run_config(int argc, const char* const* argv, std::ostream& out,
                                          std::ostream& err, int& exit_code);

/// Config-file text that parses back to the same RunConfig via --config.
std::string serialize_run_config(const RunConfig& cfg);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tifem
