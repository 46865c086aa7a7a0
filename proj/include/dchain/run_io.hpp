#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dchain {

/// Flat key-value run configuration: a human-editable text file ("key = value"
/// per line, '#' comments) plus command-line overrides. Hashing happens on the
/// canonical form: sorted keys, numeric values reprinted in a fixed format.
struct RunConfig {
  std::map<std::string, std::string> values;

  bool has(const std::string& key) const { return values.count(key) != 0; }
  void set(const std::string& key, const std::string& value) { values[key] = value; }

  std::string get_string(const std::string& key, const std::string& fallback = "") const;
  double get_double(const std::string& key, std::optional<double> fallback = {}) const;
  int get_int(const std::string& key, std::optional<int> fallback = {}) const;
};

RunConfig parse_config_file(const std::filesystem::path& path);

/// "key=value" override, as accepted on the command line.
void apply_override(RunConfig& config, const std::string& assignment);

std::string canonical_config(const RunConfig& config);

/// FNV-1a over the canonical form, as a 16-digit hex string.
std::string config_hash(const RunConfig& config);

/// Fixed shortest-roundtrip-safe numeric formatting used in every data file.
std::string format_number(double value);

/// "0.5" -> "0p5", "-1.31" -> "m1p31"; for embedding parameters in file names.
std::string number_slug(double value);

/// CSV with the comma dialect, '.' decimal separator, LF endings and a leading
/// "# <version> config=<hash>" comment line.
class CsvFile {
 public:
  CsvFile(std::string version, std::string hash, std::vector<std::string> columns);
  void add_row(const std::vector<std::string>& cells);
  void add_row(const std::vector<double>& cells);
  const std::string& content();  // assembled bytes
  void write(const std::filesystem::path& path);

 private:
  std::string buffer_;
  std::size_t n_columns_;
};

}  // namespace dchain
