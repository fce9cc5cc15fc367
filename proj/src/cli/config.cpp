#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "plateau/cli.hpp"
#include "plateau/error.hpp"

namespace plateau::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

const std::map<std::string, std::string>& RunConfig::defaults() {
  static const std::map<std::string, std::string> kDefaults{
      {"input", "lorenz"},
      {"input.column", ""},
      {"lorenz.sigma", "10"},
      {"lorenz.r", "28"},
      {"lorenz.b", "2.6666666666666665"},
      {"lorenz.dt", "0.01"},
      {"lorenz.steps", "600"},
      {"lorenz.substeps", "10"},
      {"lorenz.x0", "-0.3336666667,-0.3336666667,21.9996666667"},
      {"lorenz.coordinate", "1"},
      {"embed.lag", "6"},
      {"embed.dim", "3"},
      {"fit.degree", "2"},
      {"fit.constant", "false"},
      {"fit.folds", "10"},
      {"fit.train_start", "1"},
      {"fit.train_end", ""},
      {"fit.outputs", "1"},
      {"map", ""},
      {"correction.window", "40"},
      {"correction.n_start", "10"},
      {"correction.n_step", "10"},
      {"correction.n_cap", "30"},
      {"forecast.entry", ""},
      {"survey.entries", ""},
      {"survey.start", ""},
      {"survey.stop", ""},
      {"survey.step", "1"},
      {"survey.exclude_near_zero", "false"},
      {"survey.jobs", "1"},
      {"output", "out"},
  };
  return kDefaults;
}

RunConfig RunConfig::parse(std::istream& in) {
  RunConfig config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    config.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return config;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  return parse(in);
}

void RunConfig::set(const std::string& key, const std::string& value) {
  if (!defaults().count(key)) throw InvalidArgument("unknown config key '" + key + "'");
  values_[key] = value;
}

void RunConfig::set_assignment(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw InvalidArgument("expected key=value, got '" + assignment + "'");
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

std::string RunConfig::get(const std::string& key) const {
  if (auto it = values_.find(key); it != values_.end()) return it->second;
  auto it = defaults().find(key);
  if (it == defaults().end()) throw InvalidArgument("unknown config key '" + key + "'");
  return it->second;
}

std::size_t RunConfig::get_size(const std::string& key) const {
  const std::string text = get(key);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidArgument("config key '" + key + "' needs a non-negative integer, got '" + text + "'");
  }
  return value;
}

double RunConfig::get_double(const std::string& key) const {
  const std::string text = get(key);
  double value = 0.0;
  const char* first = text.data();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw InvalidArgument("config key '" + key + "' needs a finite number, got '" + text + "'");
  }
  return value;
}

bool RunConfig::get_bool(const std::string& key) const {
  const std::string text = get(key);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw InvalidArgument("config key '" + key + "' needs true/false, got '" + text + "'");
}

bool RunConfig::input_is_lorenz() const { return get("input") == "lorenz"; }

LorenzParams RunConfig::lorenz() const {
  return LorenzParams{get_double("lorenz.sigma"), get_double("lorenz.r"), get_double("lorenz.b")};
}

EmbeddingParams RunConfig::embedding() const {
  EmbeddingParams params{get_size("embed.lag"), get_size("embed.dim")};
  params.validate();
  return params;
}

FitConfig RunConfig::fit(std::size_t series_length) const {
  FitConfig config;
  config.degree = static_cast<unsigned>(get_size("fit.degree"));
  config.include_constant = get_bool("fit.constant");
  config.folds = get_size("fit.folds");
  if (get("fit.train_end").empty()) {
    config.training = default_training_range(series_length);
  } else {
    const std::size_t start = get_size("fit.train_start");
    const std::size_t end = get_size("fit.train_end");
    if (start < 1 || end < start || end > series_length) {
      throw InvalidArgument("training entries " + std::to_string(start) + ".." +
                            std::to_string(end) + " outside the series (1.." +
                            std::to_string(series_length) + ")");
    }
    config.training = SeriesRange{start - 1, end};
  }
  return config;
}

std::size_t RunConfig::fit_outputs() const {
  const std::size_t outputs = get_size("fit.outputs");
  if (outputs < 1 || outputs > embedding().dimension) {
    throw InvalidArgument("fit.outputs must lie in 1..embed.dim");
  }
  return outputs;
}

CorrectionSettings RunConfig::correction() const {
  CorrectionSettings settings;
  settings.window = get_size("correction.window");
  settings.search.n_start = get_size("correction.n_start");
  settings.search.n_step = get_size("correction.n_step");
  settings.search.n_cap = get_size("correction.n_cap");
  return settings;
}

std::vector<std::size_t> RunConfig::survey_entries() const {
  std::vector<std::size_t> entries;
  if (!get("survey.entries").empty()) {
    for (const auto& item : split_list(get("survey.entries"))) {
      std::size_t value = 0;
      auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
      if (ec != std::errc() || ptr != item.data() + item.size()) {
        throw InvalidArgument("survey.entries: '" + item + "' is not an entry number");
      }
      entries.push_back(value);
    }
    return entries;
  }
  if (get("survey.start").empty() || get("survey.stop").empty()) return entries;
  return equally_spaced(get_size("survey.start"), get_size("survey.stop"), get_size("survey.step"));
}

std::size_t RunConfig::jobs() const { return std::max<std::size_t>(1, get_size("survey.jobs")); }

std::string RunConfig::output_dir() const { return get("output"); }

std::string RunConfig::map_path() const {
  const std::string path = get("map");
  return path.empty() ? output_dir() + "/map.txt" : path;
}

}  // namespace plateau::cli
