#pragma once

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace lfi::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitConfig = 2,
  kExitData = 3,
  kExitNumerical = 4,
};

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> output;
  int bins = 50;
};

/// Experiment commands driven by a JSON config: bsl, tune-n, bcel, amis, gk-bf, bcop.
std::vector<std::string> experiment_commands();

/// Runs one experiment. Bulk output goes to files in the configured output
/// directory; the summary JSON (or an error JSON) is written to `out`.
int run_experiment(const std::string& command, const nlohmann::json& config, const RunOptions& options,
                   std::ostream& out);

struct ElTestArgs {
  std::filesystem::path data;
  std::string constraint = "mean";
  double prob = 0.5;
  std::vector<double> theta;
};

/// Single EL hypothesis test on a CSV file; prints neg2llr, p-value, lambda and iterations.
int run_el_test(const ElTestArgs& args, std::ostream& out);

/// Exit code for the exception currently being handled.
int exit_code_for(const std::exception& e);

/// {"error": {"kind", "message", "exit_code"}}
nlohmann::json error_json(const std::exception& e);

}  // namespace lfi::cli
