#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace dcov {

// Process exit codes shared by all subcommands.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,    // bad flags, option values or combinations
  kExitData = 3,     // unreadable or invalid input data
  kExitNumeric = 4,  // degenerate statistic or failed consistency check
};

struct RunConfig {
  std::string subcommand;  // dcor | test | simulate | scan
  std::string input;
  std::string x_columns;  // comma-separated names; a trailing '*' matches a prefix
  std::string y_columns;
  int replicates = 999;
  std::uint64_t seed = 0;
  std::string statistic = "dcov_sq";
  int threads = 0;  // 0 = hardware concurrency
  std::string output;  // empty = stdout
  std::string format = "csv";

  // simulate
  std::string shape;  // one of the six shape tags, or "backcross"
  int n = 500;
  std::optional<double> noise;  // unset = per-shape default
  int individuals = 154;
  int markers = 119;
  std::optional<int> causal_marker;
  double effect = 0.0;
  double missing_rate = 0.0;
};

// Executes one parsed configuration; returns an ExitCode and writes
// diagnostics to err. Output files are written atomically or not at all.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv and dispatches to run().
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dcov
