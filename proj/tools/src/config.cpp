#include "skfb/cli/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace skfb::cli {
namespace {

std::string make_message(const std::string& message, const std::string& path,
                         int line) {
  if (line > 0) {
    return path + ":" + std::to_string(line) + ": " + message;
  }
  if (!path.empty()) {
    return path + ": " + message;
  }
  return message;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) {
    return "";
  }
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& token, const std::string& path,
                    int line) {
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0' || errno == ERANGE) {
    throw ConfigError("invalid number '" + token + "'", path, line);
  }
  return value;
}

std::uint64_t parse_u64(const std::string& token, const std::string& path,
                        int line) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(token.c_str(), &end, 10);
  if (end == token.c_str() || *end != '\0' || errno == ERANGE) {
    throw ConfigError("invalid unsigned integer '" + token + "'", path, line);
  }
  return value;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) {
      out.push_back(item);
    }
  }
  return out;
}

}  // namespace

ConfigError::ConfigError(const std::string& message, const std::string& path,
                         int line)
    : std::runtime_error(make_message(message, path, line)), line_(line) {}

RunMode parse_run_mode(const std::string& token, const std::string& path,
                       int line) {
  if (token == "classic") return RunMode::kClassic;
  if (token == "modified") return RunMode::kModified;
  if (token == "upper_exact") return RunMode::kUpperExact;
  if (token == "upper_asymptotic") return RunMode::kUpperAsymptotic;
  throw ConfigError("unknown mode '" + token +
                        "' (expected classic, modified, upper_exact or "
                        "upper_asymptotic)",
                    path, line);
}

void SweepConfig::validate() const {
  try {
    params.validate();
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ConfigError("epsilon must lie in (0,1)");
  }
  if (!(delta > 0.0)) {
    throw ConfigError("delta must be > 0");
  }
  if (d_grid.empty()) {
    throw ConfigError("d_grid must not be empty");
  }
  double prev = 0.0;
  for (const double d : d_grid) {
    if (!(d > prev)) {
      throw ConfigError("d_grid must be strictly increasing and positive");
    }
    if (!(d < params.sigma_s2)) {
      throw ConfigError("d_grid values must lie in (0, sigma_s2)");
    }
    prev = d;
  }
  if (modes.empty()) {
    throw ConfigError("modes must not be empty");
  }
}

SweepConfig parse_config_text(const std::string& text,
                              const std::string& path) {
  SweepConfig config;
  std::stringstream stream(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    const auto comment = raw.find('#');
    if (comment != std::string::npos) {
      raw = raw.substr(0, comment);
    }
    const std::string line = trim(raw);
    if (line.empty()) {
      continue;
    }

    std::string key;
    std::string value;
    const auto eq = line.find('=');
    if (eq != std::string::npos) {
      key = trim(line.substr(0, eq));
      value = trim(line.substr(eq + 1));
    } else {
      const auto sp = line.find_first_of(" \t");
      if (sp == std::string::npos) {
        throw ConfigError("expected 'key = value'", path, line_no);
      }
      key = trim(line.substr(0, sp));
      value = trim(line.substr(sp + 1));
    }
    if (key.empty() || value.empty()) {
      throw ConfigError("expected 'key = value'", path, line_no);
    }

    if (key == "sigma_s2") {
      config.params.sigma_s2 = parse_double(value, path, line_no);
    } else if (key == "sigma_eta2") {
      config.params.sigma_eta2 = parse_double(value, path, line_no);
    } else if (key == "sigma_e2") {
      config.params.sigma_e2 = parse_double(value, path, line_no);
    } else if (key == "sigma_e2_tilde") {
      config.params.sigma_e2_tilde = parse_double(value, path, line_no);
    } else if (key == "P") {
      config.params.power = parse_double(value, path, line_no);
    } else if (key == "epsilon") {
      config.epsilon = parse_double(value, path, line_no);
    } else if (key == "delta") {
      config.delta = parse_double(value, path, line_no);
    } else if (key == "d_grid") {
      config.d_grid.clear();
      for (const auto& item : split_list(value)) {
        config.d_grid.push_back(parse_double(item, path, line_no));
      }
      if (config.d_grid.empty()) {
        throw ConfigError("d_grid must list at least one value", path,
                          line_no);
      }
    } else if (key == "modes") {
      config.modes.clear();
      for (const auto& item : split_list(value)) {
        config.modes.insert(parse_run_mode(item, path, line_no));
      }
    } else if (key == "seed") {
      config.seed = parse_u64(value, path, line_no);
    } else if (key == "output") {
      config.output = value;
    } else {
      throw ConfigError("unknown key '" + key + "'", path, line_no);
    }
  }
  return config;
}

SweepConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file", path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

}  // namespace skfb::cli
