#include "cli_config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#ifndef KZOSC_VERSION
#define KZOSC_VERSION "0.0.0"
#endif

namespace kzosc::cli {

const char* tool_version() { return KZOSC_VERSION; }

void SweepSpec::validate(const std::string& where) const {
  static const std::vector<std::string> axes{"omega", "b_amp", "eta", "j", "delta_prime"};
  if (std::find(axes.begin(), axes.end(), axis) == axes.end())
    throw ConfigError(where + ".axis: unknown axis '" + axis + "'");
  if (!std::isfinite(min) || !std::isfinite(max) || !(min < max))
    throw ConfigError(where + ": min must be < max");
  if (steps < 2) throw ConfigError(where + ".steps: must be >= 2");
  if (log_scale && !(min > 0.0)) throw ConfigError(where + ".scale: log scale needs min > 0");
}

std::vector<double> SweepSpec::values() const {
  std::vector<double> v(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double s = static_cast<double>(i) / (steps - 1);
    v[i] = log_scale ? min * std::pow(max / min, s) : min + s * (max - min);
  }
  v.front() = min;
  v.back() = max;
  return v;
}

Fields::Fields(const Json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
  if (!obj_.is_object()) throw ConfigError(where() + ": expected an object");
}

std::string Fields::path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

bool Fields::has(const std::string& key) const { return obj_.contains(key) && !obj_.at(key).is_null(); }

const Json& Fields::raw(const std::string& key) const {
  if (!has(key)) throw ConfigError(path(key) + ": missing field");
  return obj_.at(key);
}

double Fields::number(const std::string& key) const {
  const Json& v = raw(key);
  if (!v.is_number()) throw ConfigError(path(key) + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(path(key) + ": must be finite");
  return d;
}

double Fields::number(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }

int Fields::integer(const std::string& key, int fallback) const {
  if (!has(key)) return fallback;
  const Json& v = raw(key);
  if (!v.is_number_integer()) throw ConfigError(path(key) + ": expected an integer");
  return v.get<int>();
}

bool Fields::boolean(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const Json& v = raw(key);
  if (!v.is_boolean()) throw ConfigError(path(key) + ": expected true or false");
  return v.get<bool>();
}

std::string Fields::string(const std::string& key, const std::string& fallback) const {
  if (!has(key)) return fallback;
  const Json& v = raw(key);
  if (!v.is_string()) throw ConfigError(path(key) + ": expected a string");
  return v.get<std::string>();
}

Fields Fields::object(const std::string& key) const { return Fields(raw(key), path(key)); }

void Fields::only(const std::vector<std::string>& allowed) const {
  for (auto it = obj_.begin(); it != obj_.end(); ++it)
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      throw ConfigError(path(it.key()) + ": unknown field");
}

SweepSpec parse_sweep(const Fields& f, const std::vector<std::string>& allowed_axes) {
  f.only({"axis", "min", "max", "steps", "scale"});
  SweepSpec s;
  s.axis = f.string("axis", "");
  s.min = f.number("min");
  s.max = f.number("max");
  s.steps = f.integer("steps", 2);
  const std::string scale = f.string("scale", "linear");
  if (scale != "linear" && scale != "log") throw ConfigError(f.path("scale") + ": expected linear or log");
  s.log_scale = scale == "log";
  const std::string where = f.where();
  s.validate(where);
  if (std::find(allowed_axes.begin(), allowed_axes.end(), s.axis) == allowed_axes.end())
    throw ConfigError(where + ".axis: axis '" + s.axis + "' does not apply to this command");
  return s;
}

std::vector<double> parse_axis_values(const Fields& f, const std::string& key, const std::string& axis_name,
                                      const std::vector<double>& fallback) {
  if (!f.has(key)) return fallback;
  const Json& v = f.raw(key);
  if (v.is_number()) return {f.number(key)};
  if (v.is_array()) {
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number() || !std::isfinite(v[i].get<double>()))
        throw ConfigError(f.path(key) + "[" + std::to_string(i) + "]: expected a finite number");
      out.push_back(v[i].get<double>());
    }
    if (out.empty()) throw ConfigError(f.path(key) + ": empty list");
    return out;
  }
  if (v.is_object()) {
    Json with_axis = v;
    if (!with_axis.contains("axis")) with_axis["axis"] = axis_name;
    return parse_sweep(Fields(with_axis, f.path(key)), {axis_name}).values();
  }
  throw ConfigError(f.path(key) + ": expected a number, a list or a sweep object");
}

Json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    // locate the byte offset as line:column for the diagnostic
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": JSON syntax error");
  }
  if (!doc.is_object()) throw ConfigError(path + ": top level must be an object");
  if (doc.contains("tool_version") && doc.contains("parameters")) return doc.at("parameters");
  return doc;
}

namespace {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out += ',';
    out += t.columns[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      if (row[i]) out += format_number(*row[i]);
    }
    out += '\n';
  }
  return out;
}

Json to_json(const Table& t) {
  Json rows = Json::array();
  for (const auto& row : t.rows) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(v ? Json(*v) : Json(nullptr));
    rows.push_back(std::move(r));
  }
  return Json{{"columns", t.columns}, {"rows", std::move(rows)}};
}

Json RunManifest::to_json() const {
  return Json{{"command", command},
              {"parameters", parameters},
              {"tool_version", tool_version},
              {"wall_time_seconds", wall_time_seconds}};
}

std::string manifest_path(const std::string& output_path) { return output_path + ".manifest.json"; }

}  // namespace kzosc::cli
