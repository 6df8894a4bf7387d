#include "skfb/cli/csv.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace skfb::cli {

std::string format_sig(double value) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string format_u64(std::uint64_t value) { return std::to_string(value); }

std::string format_i64(std::int64_t value) { return std::to_string(value); }

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty() || line.front() == '#') {
      continue;
    }
    std::vector<std::string> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      row.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
      row.emplace_back();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path);
  }
  out << text;
  if (!out) {
    throw std::runtime_error("failed writing output file: " + path);
  }
}

}  // namespace skfb::cli
