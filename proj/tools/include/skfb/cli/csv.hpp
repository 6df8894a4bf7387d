#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace skfb::cli {

// Formats a double with 12 significant digits ("%.12g", C locale).
std::string format_sig(double value);

std::string format_u64(std::uint64_t value);
std::string format_i64(std::int64_t value);

// Parses comma-separated rows; '#'-prefixed lines are unit/metadata headers
// and are skipped. Used by the round-trip tests and golden comparisons.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

// Writes `text` to `path`, or to stdout when `path` is empty. LF endings.
void write_output(const std::string& path, const std::string& text);

}  // namespace skfb::cli
