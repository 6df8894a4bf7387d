#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "skfb/cli/config.hpp"
#include "skfb/cli/csv.hpp"
#include "skfb/cli/runners.hpp"
#include "skfb/types.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitScanOverflow = 3;
constexpr int kExitAssertionFailure = 4;

struct CommonFlags {
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
};

skfb::cli::SweepConfig load_config(const CommonFlags& flags) {
  skfb::cli::SweepConfig config;
  if (!flags.config_path.empty()) {
    config = skfb::cli::parse_config_file(flags.config_path);
  }
  if (!flags.out_path.empty()) {
    config.output = flags.out_path;
  }
  if (flags.seed) {
    config.seed = flags.seed;
  }
  if (flags.threads) {
    config.threads = *flags.threads;
  }
  config.validate();
  return config;
}

// Randomized subcommands require an explicit seed or generate and print one.
std::uint64_t resolve_seed(skfb::cli::SweepConfig& config) {
  if (!config.seed) {
    std::random_device rd;
    config.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    std::cerr << "seed " << *config.seed << "\n";
  }
  return *config.seed;
}

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "Config file path");
  cmd->add_option("--out", flags.out_path, "Output file path (default stdout)");
  cmd->add_option("--seed", flags.seed, "64-bit seed for randomized runs");
  cmd->add_option("--threads", flags.threads,
                  "Worker threads (0 = hardware default); results do not "
                  "depend on this");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-blocklength bound and simulation toolkit for "
               "feedback coding over the Gaussian wiretap channel"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string variant_name = "modified";
  std::string mode_name;
  std::string suite = "mgf";
  std::int64_t n = 1;
  std::int64_t n_max = 1;
  std::uint64_t trials = 1'000'000;

  auto* cmd_bounds = app.add_subcommand(
      "bounds", "Rate bracket across the distortion grid, CSV output");
  add_common_flags(cmd_bounds, flags);
  cmd_bounds->add_option("--mode", mode_name,
                         "Upper-bound mode override: exact|asymptotic");

  auto* cmd_simulate = app.add_subcommand(
      "simulate", "Monte Carlo excess-distortion estimate, CSV output");
  add_common_flags(cmd_simulate, flags);
  cmd_simulate->add_option("--variant", variant_name, "classic|modified");
  cmd_simulate->add_option("--n", n, "Blocklength")->required();
  cmd_simulate->add_option("--trials", trials, "Monte Carlo trials");

  auto* cmd_leakage = app.add_subcommand(
      "leakage", "Exact leakage vs the F2 bound for N = 1..nmax, CSV output");
  add_common_flags(cmd_leakage, flags);
  cmd_leakage->add_option("--variant", variant_name, "classic|modified");
  cmd_leakage->add_option("--nmax", n_max, "Largest blocklength")->required();

  auto* cmd_verify = app.add_subcommand(
      "verify", "Monte Carlo checks of the converse machinery");
  add_common_flags(cmd_verify, flags);
  cmd_verify->add_option("--suite", suite, "mgf|moments|berry_esseen");
  cmd_verify->add_option("--trials", trials, "Monte Carlo trials per check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }

  try {
    skfb::cli::SweepConfig config = load_config(flags);

    if (cmd_bounds->parsed()) {
      if (!mode_name.empty()) {
        if (mode_name == "exact") {
          config.modes.erase(skfb::cli::RunMode::kUpperAsymptotic);
          config.modes.insert(skfb::cli::RunMode::kUpperExact);
        } else if (mode_name == "asymptotic") {
          config.modes.erase(skfb::cli::RunMode::kUpperExact);
          config.modes.insert(skfb::cli::RunMode::kUpperAsymptotic);
        } else {
          throw skfb::cli::ConfigError("unknown --mode '" + mode_name +
                                       "' (expected exact or asymptotic)");
        }
      }
      skfb::cli::write_output(config.output, skfb::cli::bounds_csv(config));
      return kExitOk;
    }

    const auto variant = [&] {
      if (variant_name == "classic") return skfb::SchemeVariant::kClassic;
      if (variant_name == "modified") return skfb::SchemeVariant::kModified;
      throw skfb::cli::ConfigError("unknown --variant '" + variant_name +
                                   "' (expected classic or modified)");
    };

    if (cmd_simulate->parsed()) {
      const std::uint64_t seed = resolve_seed(config);
      skfb::cli::write_output(
          config.output,
          skfb::cli::simulate_csv(config, variant(), n, trials, seed));
      return kExitOk;
    }

    if (cmd_leakage->parsed()) {
      const auto run = skfb::cli::leakage_csv(config, variant(), n_max);
      skfb::cli::write_output(config.output, run.csv);
      if (run.margin_violation) {
        std::cerr << "leakage: exact leakage exceeded the F2 bound for the "
                     "modified scheme\n";
        return kExitAssertionFailure;
      }
      return kExitOk;
    }

    if (cmd_verify->parsed()) {
      const std::uint64_t seed = resolve_seed(config);
      const auto run = skfb::cli::verify_report(config, suite, trials, seed);
      skfb::cli::write_output(config.output, run.report);
      if (!config.output.empty()) {
        std::cout << (run.all_pass ? "all checks passed\n"
                                   : "some checks FAILED\n");
      }
      return run.all_pass ? kExitOk : kExitAssertionFailure;
    }
  } catch (const skfb::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const skfb::ScanOverflowError& e) {
    std::cerr << "scan overflow: " << e.what() << "\n";
    return kExitScanOverflow;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
