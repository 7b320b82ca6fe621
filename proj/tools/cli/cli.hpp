#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ejaopt/rng.hpp"

namespace ejaopt::cli {

enum class Command { kVerify, kSolve, kCondition, kCounterexample };
enum class Format { kJson, kCsv };

inline constexpr int kExitOk = 0;
inline constexpr int kExitPropertyFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInfeasible = 3;

struct RunConfig {
  Command command = Command::kVerify;
  std::uint64_t seed = kDefaultSeed;
  int trials = 1000;
  double tol = 1e-9;
  std::optional<std::string> input_path;
  std::optional<std::string> output_path;
  Format format = Format::kJson;
  int local_search = 0;  // multi-starts for `solve`
  bool timestamp = true;
};

struct CsvRow {
  std::string case_id;
  std::string algebra;
  std::string fn;
  std::string sense;
  double value = 0.0;
  std::string cert_kind;
  bool cert_pass = false;
  double residual = 0.0;
};

struct CommandResult {
  int exit_code = kExitOk;
  nlohmann::json report;
  std::vector<CsvRow> rows;  // sorted by case_id
  std::vector<std::string> diagnostics;
};

/// Throws ejaopt::ParseError on an invalid config (trials < 1, tol <= 0, ...).
void validate(const RunConfig& config);

CommandResult cmd_verify(const RunConfig& config);
CommandResult cmd_solve(const RunConfig& config);
CommandResult cmd_condition(const RunConfig& config);
CommandResult cmd_counterexample(const RunConfig& config);

/// Validates, dispatches and maps library errors onto exit codes:
/// ParseError/HypothesisError/AlgebraMismatch -> 2, InfeasibleError/DomainError -> 3.
CommandResult run(const RunConfig& config);

/// JSON report (17 significant digits, sorted keys) or CSV rows.
std::string render(const CommandResult& result, Format format);

std::string csv_header();

}  // namespace ejaopt::cli
