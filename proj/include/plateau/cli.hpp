#pragma once

// Config-driven front end. Each command returns a process exit status.

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "plateau/bench.hpp"
#include "plateau/correction.hpp"
#include "plateau/dynamics.hpp"
#include "plateau/embedding.hpp"
#include "plateau/fitting.hpp"

namespace plateau::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitNoPlateau = 2,
  kExitIo = 3,
  kExitNumerical = 4,
};

inline constexpr const char* kOutputDirEnv = "PLATEAU_OUTPUT_DIR";

// Line-oriented "key = value" settings with '#' comments. Unknown keys are
// rejected so typos do not silently fall back to defaults.
class RunConfig {
 public:
  static RunConfig parse(std::istream& in);
  static RunConfig load(const std::string& path);

  void set(const std::string& key, const std::string& value);
  // "key=value" as given on the command line.
  void set_assignment(const std::string& assignment);
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::string get(const std::string& key) const;

  static const std::map<std::string, std::string>& defaults();

  // Typed views.
  bool input_is_lorenz() const;
  LorenzParams lorenz() const;
  EmbeddingParams embedding() const;
  FitConfig fit(std::size_t series_length) const;
  std::size_t fit_outputs() const;
  CorrectionSettings correction() const;
  std::vector<std::size_t> survey_entries() const;
  std::size_t jobs() const;
  std::string output_dir() const;
  std::string map_path() const;

  std::size_t get_size(const std::string& key) const;
  double get_double(const std::string& key) const;
  bool get_bool(const std::string& key) const;

 private:
  std::map<std::string, std::string> values_;
};

// Generated Lorenz series or the CSV named by `input`.
TimeSeries load_series(const RunConfig& config, std::ostream& log);

int cmd_generate(const RunConfig& config, std::ostream& out);
int cmd_embed(const RunConfig& config, std::ostream& out);
int cmd_fit(const RunConfig& config, std::ostream& out);
int cmd_forecast(const RunConfig& config, std::ostream& out);
int cmd_survey(const RunConfig& config, std::ostream& out);

// Runs a command by name, mapping exceptions onto exit codes and printing
// their message to err.
int run_command(const std::string& name, const RunConfig& config, std::ostream& out,
                std::ostream& err);

}  // namespace plateau::cli
