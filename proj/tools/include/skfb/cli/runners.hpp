#pragma once

#include <cstdint>
#include <string>

#include "skfb/cli/config.hpp"
#include "skfb/types.hpp"

namespace skfb::cli {

// One CSV row per d_grid entry; columns for disabled modes are left empty.
std::string bounds_csv(const SweepConfig& config);

// One MonteCarloReport row per d_grid entry.
std::string simulate_csv(const SweepConfig& config, SchemeVariant variant,
                         std::int64_t n, std::uint64_t trials,
                         std::uint64_t seed);

struct LeakageRun {
  std::string csv;
  bool margin_violation;  // some Modified margin fell below -1e-10
};
LeakageRun leakage_csv(const SweepConfig& config, SchemeVariant variant,
                       std::int64_t n_max);

struct VerifyRun {
  std::string report;
  bool all_pass;
};
// suite is one of "mgf", "moments", "berry_esseen".
VerifyRun verify_report(const SweepConfig& config, const std::string& suite,
                        std::uint64_t trials, std::uint64_t seed);

}  // namespace skfb::cli
