// kzosc: sweeps of the driven two-level system and the driven Ising chain,
// drive-induced density scans, and the property self-test.
//
// Exit codes: 0 success, 1 runtime or numerical failure, 2 config error.
// Precedence: command-line flags > config fields > built-in defaults.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cli_config.hpp"
#include "commands.hpp"
#include "kzosc/errors.hpp"
#include "kzosc/selftest.hpp"

namespace {

using kzosc::cli::ConfigError;
using kzosc::cli::Json;

struct GlobalFlags {
  std::string config;
  std::string out;
  std::string format;
  unsigned workers = 0;
  bool workers_given = false;
};

void add_global_flags(CLI::App* cmd, GlobalFlags& g, bool with_config) {
  if (with_config) cmd->add_option("--config", g.config, "JSON run configuration (a run manifest also works)");
  cmd->add_option("--out", g.out, "output file (default: stdout); a manifest is written next to it");
  cmd->add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  if (with_config)
    cmd->add_option_function<unsigned>(
        "--workers", [&g](unsigned k) { g.workers = k, g.workers_given = true; },
        "concurrent parameter points (0 = all cores)");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw kzosc::Error("cannot write '" + path + "'");
  f << text;
  if (!f) throw kzosc::Error("write failed for '" + path + "'");
}

std::string field_string(const Json& cfg, const char* key) {
  if (!cfg.contains(key)) return "";
  if (!cfg.at(key).is_string()) throw ConfigError(std::string(key) + ": expected a string");
  return cfg.at(key).get<std::string>();
}

int run_table_command(const std::string& command, GlobalFlags g) {
  const auto t0 = std::chrono::steady_clock::now();
  Json cfg = g.config.empty() ? Json::object() : kzosc::cli::load_config(g.config);
  if (cfg.contains("command") && cfg.at("command") != command)
    throw ConfigError("command: config is for '" + cfg.at("command").dump() + "', not '" + command + "'");
  if (g.format.empty()) g.format = field_string(cfg, "format");
  if (g.format.empty()) g.format = "csv";
  if (g.format != "csv" && g.format != "json") throw ConfigError("format: expected csv or json");
  if (g.out.empty()) g.out = field_string(cfg, "out");
  if (!g.workers_given && cfg.contains("workers")) {
    if (!cfg.at("workers").is_number_unsigned()) throw ConfigError("workers: expected a non-negative integer");
    g.workers = cfg.at("workers").get<unsigned>();
  }
  kzosc::cli::validate_config(command, cfg);

  kzosc::cli::CommandResult result;
  if (command == "twolevel")
    result = kzosc::cli::run_twolevel(cfg, g.workers);
  else if (command == "ising")
    result = kzosc::cli::run_ising(cfg, g.workers);
  else
    result = kzosc::cli::run_nfp_scan(cfg, g.workers);

  const std::string text =
      g.format == "csv" ? kzosc::cli::to_csv(result.table) : kzosc::cli::to_json(result.table).dump(2) + "\n";
  for (const auto& note : result.notes) std::cerr << note << '\n';
  if (g.out.empty()) {
    std::cout << text;
    return 0;
  }
  // the manifest records what shapes the output; worker count and paths do not
  Json params = cfg;
  params.erase("workers");
  params.erase("out");
  params["command"] = command;
  params["format"] = g.format;
  write_file(g.out, text);
  kzosc::cli::RunManifest m{command, params, kzosc::cli::tool_version(),
                            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()};
  write_file(kzosc::cli::manifest_path(g.out), m.to_json().dump(2) + "\n");
  return 0;
}

int run_selftest(const GlobalFlags& g) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto report = kzosc::selftest::run(kzosc::selftest::options_from_env());
  const Json json = kzosc::cli::selftest_report_json(report);
  if (g.format == "json")
    std::cout << json.dump(2) << '\n';
  else
    std::cout << kzosc::cli::selftest_report_text(report);
  if (!g.out.empty()) {
    write_file(g.out, json.dump(2) + "\n");
    kzosc::cli::RunManifest m{"selftest", Json{{"command", "selftest"}, {"strict", report.strict}},
                              kzosc::cli::tool_version(),
                              std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()};
    write_file(kzosc::cli::manifest_path(g.out), m.to_json().dump(2) + "\n");
  }
  if (!report.ok()) {
    for (const auto& c : report.checks)
      if (!c.passed && (!c.warning_only || report.strict))
        std::cerr << "violated: " << c.suite << "/" << c.name << ": " << c.detail << '\n';
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Driven Landau-Zener sweeps and the driven transverse-field Ising chain"};
  app.set_version_flag("--version", std::string(kzosc::cli::tool_version()));
  app.require_subcommand(1);
  GlobalFlags g;
  add_global_flags(app.add_subcommand("twolevel", "two-level sweep: TDSE against the closed forms"), g, true);
  add_global_flags(app.add_subcommand("ising", "Ising density sweep or per-mode dump"), g, true);
  add_global_flags(app.add_subcommand("nfp-scan", "drive-induced density over omega, eta and J"), g, true);
  add_global_flags(app.add_subcommand("selftest", "property suites; KZOSC_SELFTEST_STRICT=1 makes warnings fatal"), g,
                   false);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (command == "selftest") return run_selftest(g);
    return run_table_command(command, g);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
