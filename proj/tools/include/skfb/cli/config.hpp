#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "skfb/types.hpp"

namespace skfb::cli {

enum class RunMode { kClassic, kModified, kUpperExact, kUpperAsymptotic };

// Configuration error carrying the offending config-file line (0 when the
// error is not tied to a specific line).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, const std::string& path = "",
              int line = 0);
  int line() const { return line_; }

 private:
  int line_;
};

struct SweepConfig {
  ChannelParams params{1.0, 1.0, 1.0, 1.0, 1.0};
  double epsilon = 1e-3;
  double delta = 0.01;
  std::vector<double> d_grid = {0.5};
  std::set<RunMode> modes = {RunMode::kClassic, RunMode::kModified,
                             RunMode::kUpperExact};
  std::string output;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;  // 0 = hardware default

  bool has_mode(RunMode mode) const { return modes.count(mode) != 0; }

  // Full validation: positive params, epsilon/delta ranges, nonempty and
  // strictly increasing d_grid inside (0, sigma_s2), nonempty modes.
  void validate() const;
};

// Flat key-value file; keys exactly: sigma_s2, sigma_eta2, sigma_e2,
// sigma_e2_tilde, P, epsilon, delta, d_grid, modes, seed, output.
// '#' starts a comment. Throws ConfigError with the offending line number.
SweepConfig parse_config_file(const std::string& path);

// Parses config text directly (used by the file loader and by tests).
SweepConfig parse_config_text(const std::string& text,
                              const std::string& path_for_errors = "<config>");

RunMode parse_run_mode(const std::string& token, const std::string& path,
                       int line);

}  // namespace skfb::cli
