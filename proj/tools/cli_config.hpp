// Declarative run configuration, sweep axes, output tables and run manifests
// for the kzosc command-line tool.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace kzosc::cli {

using Json = nlohmann::ordered_json;

/// Invalid configuration (exit code 2). The message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const char* tool_version();

struct SweepSpec {
  std::string axis;  // omega, b_amp, eta, j, delta_prime
  double min = 0.0;
  double max = 1.0;
  int steps = 2;
  bool log_scale = false;

  /// Throws ConfigError (prefixed by `where`) on a broken invariant.
  void validate(const std::string& where) const;
  /// `steps` points from min to max; the end points are exact.
  std::vector<double> values() const;
};

/// Typed access to a JSON object that reports the dotted path of bad fields.
class Fields {
 public:
  Fields(const Json& obj, std::string path);

  bool has(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  double number(const std::string& key) const;
  int integer(const std::string& key, int fallback) const;
  bool boolean(const std::string& key, bool fallback) const;
  std::string string(const std::string& key, const std::string& fallback) const;
  Fields object(const std::string& key) const;
  const Json& raw(const std::string& key) const;
  std::string path(const std::string& key) const;
  /// Dotted path of this object itself.
  std::string where() const { return path_.empty() ? std::string("config") : path_; }
  /// Throws ConfigError if the object carries a key outside `allowed`.
  void only(const std::vector<std::string>& allowed) const;

 private:
  const Json& obj_;
  std::string path_;
};

SweepSpec parse_sweep(const Fields& f, const std::vector<std::string>& allowed_axes);

/// A scalar, a list, or a sweep object {min, max, steps, scale} for `key`.
std::vector<double> parse_axis_values(const Fields& f, const std::string& key, const std::string& axis_name,
                                      const std::vector<double>& fallback);

/// Reads a config file. A run manifest is accepted too: its `parameters`
/// object is the config it was produced from. Throws ConfigError with the
/// line and column of JSON syntax errors.
Json load_config(const std::string& path);

/// Numeric table; an empty optional is a method that does not apply.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;
};

/// Header row, then one line per row; every number with 17 significant digits.
std::string to_csv(const Table& t);
Json to_json(const Table& t);

struct RunManifest {
  std::string command;
  Json parameters;
  std::string tool_version;
  double wall_time_seconds = 0.0;

  Json to_json() const;
};

/// "<output>.manifest.json".
std::string manifest_path(const std::string& output_path);

}  // namespace kzosc::cli
