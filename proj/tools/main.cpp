#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "plateau/cli.hpp"
#include "plateau/error.hpp"

int main(int argc, char** argv) {
  using plateau::cli::RunConfig;

  CLI::App app{"Global polynomial forecasting with difference-table correction"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string config_path;
  std::vector<std::string> assignments;
  std::string output, input, map_path, entry, jobs;
  app.add_option("-c,--config", config_path, "key = value config file");
  app.add_option("-s,--set", assignments, "Override a config key (key=value), repeatable");
  app.add_option("-o,--output", output, "Output directory (config: output)");
  app.add_option("-i,--input", input, "'lorenz' or a series CSV (config: input)");
  app.add_option("-m,--map", map_path, "Map file (config: map)");
  app.add_option("-e,--entry", entry, "Last known 1-based entry to forecast from (config: forecast.entry)");
  app.add_option("-j,--jobs", jobs, "Survey worker threads (config: survey.jobs)");

  app.add_subcommand("generate", "Integrate the Lorenz system and write series.csv");
  app.add_subcommand("embed", "Write the delay-vector reconstruction to phase_space.csv");
  app.add_subcommand("fit", "Fit the global polynomial map and save it");
  app.add_subcommand("forecast", "Plain and corrected forecast from one entry");
  app.add_subcommand("survey", "Compare plain and corrected forecasts over many entries");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version exit cleanly; every other parse failure is a usage error.
    const int code = app.exit(e);
    return code == 0 ? plateau::cli::kExitOk : plateau::cli::kExitUsage;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  RunConfig config;
  try {
    if (!config_path.empty()) config = RunConfig::load(config_path);
    if (const char* env = std::getenv(plateau::cli::kOutputDirEnv); env && *env) {
      config.set("output", env);
    }
    for (const auto& a : assignments) config.set_assignment(a);
    if (!output.empty()) config.set("output", output);
    if (!input.empty()) config.set("input", input);
    if (!map_path.empty()) config.set("map", map_path);
    if (!entry.empty()) config.set("forecast.entry", entry);
    if (!jobs.empty()) config.set("survey.jobs", jobs);
  } catch (const plateau::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return plateau::cli::kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return plateau::cli::kExitUsage;
  }

  return plateau::cli::run_command(command, config, std::cout, std::cerr);
}
