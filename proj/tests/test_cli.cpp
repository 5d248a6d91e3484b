#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cli_config.hpp"
#include "commands.hpp"

using namespace kzosc::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

int run_tool(const std::string& args) {
  const std::string cmd = std::string(KZOSC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch_dir() {
  const fs::path d = fs::temp_directory_path() / ("kzosc_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

const char* kTwoPoint = R"({
  "command": "twolevel",
  "drive": {"delta": 0.2, "eps": 0.5, "b_amp": 0.1},
  "sweep": {"axis": "omega", "min": 2.0, "max": 3.0, "steps": 2},
  "integration": {"tau_start": -100, "tau_end": 100},
  "methods": ["pt", "pt_special"]
})";

}  // namespace

TEST_CASE("sweep specification") {
  SweepSpec s{"omega", 1.0, 2.0, 5, false};
  const auto v = s.values();
  REQUIRE(v.size() == 5);
  CHECK(v.front() == 1.0);
  CHECK(v[2] == 1.5);
  CHECK(v.back() == 2.0);
  SweepSpec l{"j", 1.0, 100.0, 3, true};
  CHECK(l.values()[1] == doctest::Approx(10.0));
  CHECK(l.values().back() == 100.0);
  CHECK_THROWS_AS(SweepSpec({"bogus", 1.0, 2.0, 3, false}).validate("sweep"), ConfigError);
  CHECK_THROWS_AS(SweepSpec({"omega", 2.0, 2.0, 3, false}).validate("sweep"), ConfigError);
  CHECK_THROWS_AS(SweepSpec({"omega", 1.0, 2.0, 1, false}).validate("sweep"), ConfigError);
  CHECK_THROWS_AS(SweepSpec({"omega", 0.0, 2.0, 3, true}).validate("sweep"), ConfigError);
  CHECK_NOTHROW(SweepSpec({"delta_prime", 1.0, 2.0, 2, false}).validate("sweep"));
}

TEST_CASE("sweep parsing names the bad field") {
  const Json bad = Json::parse(R"({"sweep": {"axis": "j", "min": 1, "max": 2}})");
  try {
    parse_sweep(Fields(bad, "").object("sweep"), {"omega"});
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("sweep.axis") != std::string::npos);
  }
  const Json list = Json::parse(R"({"eta": [0, 0.05], "j": {"min": 4, "max": 8, "steps": 3}})");
  const Fields f(list, "");
  CHECK(parse_axis_values(f, "eta", "eta", {}) == std::vector<double>{0.0, 0.05});
  CHECK(parse_axis_values(f, "j", "j", {}) == std::vector<double>{4.0, 6.0, 8.0});
  CHECK(parse_axis_values(f, "omega", "omega", {6.0}) == std::vector<double>{6.0});
}

TEST_CASE("CSV and JSON tables") {
  Table t{{"x", "y"}, {{0.1, std::nullopt}, {1.0 / 3.0, 2.0}}};
  CHECK(to_csv(t) == "x,y\n0.10000000000000001,\n0.33333333333333331,2\n");
  const Json j = to_json(t);
  CHECK(j["rows"][0][1].is_null());
  CHECK(j["columns"][1] == "y");
}

TEST_CASE("config loading") {
  const fs::path d = scratch_dir();
  spit(d / "bad.json", "{\n  \"drive\": {\n    \"delta\": 0.2,,\n  }\n}\n");
  try {
    load_config((d / "bad.json").string());
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find(":3:") != std::string::npos);
  }
  spit(d / "manifest.json", R"({"command":"twolevel","parameters":{"n_max":7},"tool_version":"x","wall_time_seconds":1})");
  CHECK(load_config((d / "manifest.json").string()) == Json{{"n_max", 7}});
  fs::remove_all(d);
}

TEST_CASE("twolevel command") {
  const auto r = run_twolevel(Json::parse(kTwoPoint), 1);
  REQUIRE(r.table.rows.size() == 2);
  CHECK(r.table.columns.front() == "omega");
  const auto& row = r.table.rows[0];
  CHECK(row[0] == 2.0);
  CHECK_FALSE(row[1].has_value());  // tdse not requested
  CHECK(row[2].has_value());
  CHECK(row[3].has_value());  // a = 0 closed form
  Json cfg = Json::parse(kTwoPoint);
  cfg["sweep"]["axis"] = "j";
  CHECK_THROWS_AS(validate_config("twolevel", cfg), ConfigError);
  cfg = Json::parse(kTwoPoint);
  cfg["surplus"] = 1;
  CHECK_THROWS_AS(validate_config("twolevel", cfg), ConfigError);
}

TEST_CASE("results are independent of the worker count") {
  Json cfg = Json::parse(kTwoPoint);
  cfg["sweep"]["steps"] = 5;
  cfg["methods"] = Json::array({"tdse", "pt"});
  CHECK(to_csv(run_twolevel(cfg, 1).table) == to_csv(run_twolevel(cfg, 3).table));
}

TEST_CASE("nfp-scan without drive is zero") {
  const auto r = run_nfp_scan(Json::parse(R"({"omega": 6, "eta": 0, "j": [4, 7]})"), 1);
  REQUIRE(r.table.rows.size() == 2);
  for (const auto& row : r.table.rows)
    for (std::size_t i = 3; i < row.size(); ++i)
      if (row[i]) CHECK(*row[i] == 0.0);
}

TEST_CASE("ising mode dump on four sites") {
  const auto r = run_ising(
      Json::parse(R"({"model": "diag", "mode": "modes", "params": {"j": 2, "eta": 0.05, "omega": 6, "n_sites": 4},
                      "integration": {"tau_start": -100, "tau_end": 100}})"),
      1);
  REQUIRE(r.table.rows.size() == 4);
  CHECK(*r.table.rows[0][0] == doctest::Approx(-3 * 3.141592653589793 / 4));
  CHECK(*r.table.rows[3][0] == doctest::Approx(3 * 3.141592653589793 / 4));
}

TEST_CASE("tool: exit codes, manifest and replay") {
  const fs::path d = scratch_dir();
  spit(d / "run.json", kTwoPoint);
  CHECK(run_tool("twolevel --config " + (d / "run.json").string() + " --out " + (d / "a.csv").string()) == 0);
  REQUIRE(fs::exists(d / "a.csv"));
  REQUIRE(fs::exists(d / "a.csv.manifest.json"));
  const Json m = Json::parse(slurp(d / "a.csv.manifest.json"));
  CHECK(m["command"] == "twolevel");
  CHECK(m.contains("tool_version"));
  CHECK(m["wall_time_seconds"].is_number());
  CHECK(run_tool("twolevel --config " + (d / "a.csv.manifest.json").string() + " --workers 2 --out " +
                 (d / "b.csv").string()) == 0);
  CHECK(slurp(d / "a.csv") == slurp(d / "b.csv"));

  Json bad = Json::parse(kTwoPoint);
  bad["sweep"]["axis"] = "frequency";
  spit(d / "bad.json", bad.dump());
  CHECK(run_tool("twolevel --config " + (d / "bad.json").string() + " --out " + (d / "c.csv").string()) == 2);
  CHECK_FALSE(fs::exists(d / "c.csv"));
  CHECK(run_tool("twolevel --no-such-flag") == 2);
  CHECK(run_tool("twolevel --config " + (d / "missing.json").string()) == 2);

  // an unwritable output path is a runtime failure, not a config error
  CHECK(run_tool("twolevel --config " + (d / "run.json").string() + " --out " + (d / "no_dir" / "x.csv").string()) ==
        1);
  fs::remove_all(d);
}

TEST_CASE("shipped example configs validate") {
  int seen = 0;
  for (const auto& entry : fs::directory_iterator(KZOSC_CONFIG_DIR)) {
    if (entry.path().extension() != ".json") continue;
    CAPTURE(entry.path().string());
    const Json cfg = load_config(entry.path().string());
    CHECK_NOTHROW(validate_config(cfg.at("command").get<std::string>(), cfg));
    ++seen;
  }
  CHECK(seen > 0);
}
