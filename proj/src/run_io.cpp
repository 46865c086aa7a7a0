#include "dchain/run_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dchain/core.hpp"

namespace dchain {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

bool parse_full_double(const std::string& s, double* out) {
  if (s.empty()) return false;
  std::size_t consumed = 0;
  try {
    *out = std::stod(s, &consumed);
  } catch (...) {
    return false;
  }
  return consumed == s.size();
}

}  // namespace

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = values.find(key);
  return it == values.end() ? fallback : it->second;
}

double RunConfig::get_double(const std::string& key, std::optional<double> fallback) const {
  const auto it = values.find(key);
  if (it == values.end()) {
    if (fallback) return *fallback;
    throw ConfigError("missing config key: " + key);
  }
  double v = 0.0;
  if (!parse_full_double(it->second, &v))
    throw ConfigError("config key " + key + " is not a number: " + it->second);
  return v;
}

int RunConfig::get_int(const std::string& key, std::optional<int> fallback) const {
  const auto it = values.find(key);
  if (it == values.end()) {
    if (fallback) return *fallback;
    throw ConfigError("missing config key: " + key);
  }
  try {
    std::size_t consumed = 0;
    const int v = std::stoi(it->second, &consumed);
    if (consumed != it->second.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (...) {
    throw ConfigError("config key " + key + " is not an integer: " + it->second);
  }
}

RunConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  RunConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                        ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(path.string() + ": empty key");
    config.values[key] = value;
  }
  return config;
}

void apply_override(RunConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override must look like key=value: " + assignment);
  config.values[trim(assignment.substr(0, eq))] = trim(assignment.substr(eq + 1));
}

std::string format_number(double value) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string canonical_config(const RunConfig& config) {
  std::ostringstream out;
  for (const auto& [key, value] : config.values) {  // std::map iterates sorted
    double v = 0.0;
    out << key << '=' << (parse_full_double(value, &v) ? format_number(v) : value) << '\n';
  }
  return out.str();
}

std::string config_hash(const RunConfig& config) {
  const std::string canon = canonical_config(config);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string number_slug(double value) {
  std::string s = format_number(value);
  std::string out;
  for (char c : s) {
    if (c == '-')
      out += 'm';
    else if (c == '.')
      out += 'p';
    else if (c == '+')
      continue;
    else
      out += c;
  }
  return out;
}

CsvFile::CsvFile(std::string version, std::string hash, std::vector<std::string> columns)
    : n_columns_(columns.size()) {
  buffer_ = "# " + version + " config=" + hash + "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    buffer_ += columns[i];
    buffer_ += (i + 1 < columns.size()) ? ',' : '\n';
  }
}

void CsvFile::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != n_columns_) throw ConfigError("CsvFile: wrong number of cells");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    buffer_ += cells[i];
    buffer_ += (i + 1 < cells.size()) ? ',' : '\n';
  }
}

void CsvFile::add_row(const std::vector<double>& cells) {
  std::vector<std::string> text(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) text[i] = format_number(cells[i]);
  add_row(text);
}

const std::string& CsvFile::content() { return buffer_; }

void CsvFile::write(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << buffer_;
}

}  // namespace dchain
