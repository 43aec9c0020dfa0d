#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavelag/stepper.hpp"

namespace wavelag {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

enum class RunMode { simulate, spectrum, resolvent_sweep, sweep, check_params };

const char* to_string(RunMode m);
RunMode parse_mode(const std::string& s);

struct SweepSpec {
  std::vector<double> alphas;
  std::vector<double> betas;
  std::vector<double> taus;
  double T_final = 20.0;
  bool spectral = false;
  int spectral_N = 40;
  int spectral_M = 16;
};

struct ResolventSpec {
  double gamma_min = -50.0;
  double gamma_max = 50.0;
  int count = 101;
  int h_metric_every = 0;  // 0 disables the weighted-norm column
};

/// Flat key/value configuration with [section] headers. Sections: params,
/// grid, initial, run, sweep, resolvent. Unknown keys, duplicate keys and
/// malformed values are reported with their line number.
struct Config {
  double alpha = 0.0;
  double beta = 0.0;
  double tau = 0.0;
  std::optional<double> xi;
  double safety = 0.9;

  double L = 1.0;
  int N = 200;
  int M_min = 4;
  double cfl = 0.9;

  std::string y0 = "zero";
  std::string z0 = "zero";
  std::string f = "zero";

  double T_final = 1.0;
  int record_every = 1;
  std::string out;
  std::optional<RunMode> mode;
  std::uint64_t seed = 0;

  SweepSpec sweep;
  ResolventSpec resolvent;

  SystemParams make_params(bool unsafe = false) const;
  Scenario make_scenario(bool unsafe = false) const;

  /// Resolved run description: every default filled in, dt/M/varpi/delta
  /// included, suitable for embedding in output files.
  std::vector<std::pair<std::string, std::string>> resolved_metadata(bool unsafe = false) const;
};

/// Parses and validates a configuration file. Admissibility violations are
/// errors unless unsafe is set. Throws ConfigError.
Config load_config(const std::string& path, bool unsafe = false);

/// Same grammar, from an in-memory string (used by tests).
Config parse_config(const std::string& text, bool unsafe = false);

}  // namespace wavelag
