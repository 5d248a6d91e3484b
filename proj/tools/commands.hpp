// The tool's subcommands as functions from a parsed config to a table.
#pragma once

#include <string>
#include <vector>

#include "cli_config.hpp"
#include "kzosc/selftest.hpp"

namespace kzosc::cli {

struct CommandResult {
  Table table;
  std::vector<std::string> notes;  // one-line summaries printed to stderr
};

/// Fields every command accepts at the top level (flags override them).
const std::vector<std::string>& common_fields();

/// Two-level sweep: axis value, p_tdse, p_pt, p_pt_special, p_fp_exact, p_fp_adiabatic.
CommandResult run_twolevel(const Json& cfg, unsigned workers);

/// Ising density sweep over the coupling, or a per-mode dump at one point.
CommandResult run_ising(const Json& cfg, unsigned workers);

/// Drive-induced density part over omega x eta x J.
CommandResult run_nfp_scan(const Json& cfg, unsigned workers);

/// Parses every field without computing anything; throws ConfigError.
void validate_config(const std::string& command, const Json& cfg);

Json selftest_report_json(const selftest::Report& r);
std::string selftest_report_text(const selftest::Report& r);

}  // namespace kzosc::cli
