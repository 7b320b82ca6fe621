#include <fstream>
#include <iostream>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include "cli.hpp"

int main(int argc, char** argv) {
  using namespace ejaopt::cli;

  CLI::App app{"ejaopt: spectral optimization over Euclidean Jordan algebras"};
  app.require_subcommand(1);

  RunConfig config;
  std::string format = "json";
  std::string out_path;
  bool no_timestamp = false;
  app.add_option("--seed", config.seed, "RNG seed")->capture_default_str();
  app.add_option("--trials", config.trials, "Trials per property suite")->capture_default_str();
  app.add_option("--tol", config.tol, "Tolerance")->capture_default_str();
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--out", out_path, "Write the report to PATH instead of stdout");
  app.add_option("--local-search", config.local_search, "Multi-start local searches for solve");
  app.add_flag("--no-timestamp", no_timestamp, "Omit generated_at from reports");

  std::string input;
  auto* verify = app.add_subcommand("verify", "Run the property suites")->fallthrough();
  auto* solve = app.add_subcommand("solve", "Solve a problem file")->fallthrough();
  auto* condition = app.add_subcommand("condition", "Minimize the condition-vector norm over an orbit")->fallthrough();
  auto* counterexample = app.add_subcommand("counterexample", "Weak-orbit commutation counterexample")->fallthrough();
  solve->add_option("input", input, "Problem file")->required();
  condition->add_option("input", input, "Problem file (default: built-in instance)");
  counterexample->add_option("input", input, "Problem file with a weak orbit (default: built-in instance)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (verify->parsed()) config.command = Command::kVerify;
  if (solve->parsed()) config.command = Command::kSolve;
  if (condition->parsed()) config.command = Command::kCondition;
  if (counterexample->parsed()) config.command = Command::kCounterexample;
  if (!input.empty()) config.input_path = input;
  if (!out_path.empty()) config.output_path = out_path;
  config.format = format == "csv" ? Format::kCsv : Format::kJson;
  config.timestamp = !no_timestamp;

  const CommandResult result = run(config);
  for (const auto& line : result.diagnostics) std::cerr << "ejaopt: " << line << '\n';

  const std::string text = render(result, config.format);
  if (config.output_path) {
    std::ofstream out(*config.output_path, std::ios::binary);
    if (!out || !(out << text)) {
      std::cerr << "ejaopt: cannot write '" << *config.output_path << "'\n";
      return kExitUsage;
    }
  } else {
    std::cout << text;
  }
  return result.exit_code;
}
