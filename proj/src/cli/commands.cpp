#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "plateau/cli.hpp"
#include "plateau/error.hpp"

namespace plateau::cli {

namespace {

std::string human(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string ensure_output_dir(const RunConfig& config) {
  const std::string dir = config.output_dir();
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
  return dir;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

std::vector<double> parse_state(const std::string& text) {
  std::vector<double> state;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) state.push_back(std::stod(item));
  return state;
}

// "x1^2*x2" in the delay-vector letters x, y, z when m = 3.
std::string term_name(const ExponentTuple& e) {
  if (e.size() != 3) return e.to_string();
  static const char* kLetters[] = {"x", "y", "z"};
  std::string out;
  for (std::size_t i = 0; i < 3; ++i) {
    for (unsigned k = 0; k < e[i]; ++k) out += kLetters[i];
  }
  return out.empty() ? "1" : out;
}

std::string output_map_path(const RunConfig& config, std::size_t output) {
  if (output == 0) return config.map_path();
  std::filesystem::path base(config.map_path());
  return (base.parent_path() / (base.stem().string() + "_output" + std::to_string(output) +
                                base.extension().string()))
      .string();
}

}  // namespace

TimeSeries load_series(const RunConfig& config, std::ostream& log) {
  if (!config.input_is_lorenz()) return read_series_csv(config.get("input"), config.get("input.column"));

  const LorenzParams params = config.lorenz();
  const auto x0 = parse_state(config.get("lorenz.x0"));
  const std::size_t samples = config.get_size("lorenz.steps");
  const std::size_t coordinate = config.get_size("lorenz.coordinate");
  if (samples < 1) throw InvalidArgument("lorenz.steps must be ≥ 1");
  if (coordinate < 1 || coordinate > 3) throw InvalidArgument("lorenz.coordinate must be 1, 2 or 3");
  log << "lorenz: sigma=" << human(params.sigma) << " R=" << human(params.r)
      << " b=" << human(params.b) << " dt=" << human(config.get_double("lorenz.dt"))
      << " samples=" << samples << " substeps=" << config.get_size("lorenz.substeps")
      << " x0=(" << config.get("lorenz.x0") << ")\n";
  const auto trajectory = rk4_integrate(lorenz_field(params), x0, config.get_double("lorenz.dt"),
                                        samples - 1, config.get_size("lorenz.substeps"));
  return sample_coordinate(trajectory, coordinate - 1);
}

int cmd_generate(const RunConfig& config, std::ostream& out) {
  if (!config.input_is_lorenz()) throw InvalidArgument("generate needs input = lorenz");
  const auto series = load_series(config, out);
  const std::string path = ensure_output_dir(config) + "/series.csv";
  write_series_csv(path, series);
  out << "wrote " << series.size() << " samples to " << path << '\n';
  return kExitOk;
}

int cmd_embed(const RunConfig& config, std::ostream& out) {
  const auto series = load_series(config, out);
  const auto space = reconstruct(series, config.embedding());
  const std::string path = ensure_output_dir(config) + "/phase_space.csv";
  auto file = open_output(path);
  write_phase_space_csv(file, space);
  out << "wrote " << space.size() << " delay vectors (lag " << space.params().lag << ", dimension "
      << space.dimension() << ") to " << path << '\n';
  return kExitOk;
}

int cmd_fit(const RunConfig& config, std::ostream& out) {
  const auto series = load_series(config, out);
  const auto space = reconstruct(series, config.embedding());
  FitConfig fit = config.fit(series.size());
  const std::size_t outputs = config.fit_outputs();
  ensure_output_dir(config);

  std::size_t total = 0;
  for (std::size_t j = 0; j < outputs; ++j) {
    fit.target_component = space.dimension() - 1 - j;
    const auto map = fit_kfold(series, space, fit);
    const std::string path = output_map_path(config, j);
    map.save(path);
    total += map.coefficients().size();

    out << "output " << j << " (component " << fit.target_component + 1 << " of the next point): "
        << map.coefficients().size() << " coefficients -> " << path << '\n';
    for (std::size_t i = 0; i < map.basis().size(); ++i) {
      out << "  " << term_name(map.basis()[i]) << '\t' << format_full(map.coefficients()[i]) << '\n';
    }
  }
  out << "training entries " << fit.training.begin + 1 << ".." << fit.training.end << ", "
      << fit.folds << " folds, degree " << fit.degree
      << (fit.include_constant ? " with" : " without") << " constant\n";
  out << "total coefficients: " << total << '\n';
  return kExitOk;
}

int cmd_forecast(const RunConfig& config, std::ostream& out) {
  if (config.get("forecast.entry").empty()) throw InvalidArgument("forecast needs forecast.entry");
  const auto series = load_series(config, out);
  const auto space = reconstruct(series, config.embedding());
  const auto map = PolynomialMap::load(config.map_path());
  const std::size_t entry = config.get_size("forecast.entry");
  const std::size_t point = point_for_entry(space, entry);

  const auto training = config.fit(series.size()).training;
  if (forecast_target_index(point, space.params()) < training.end) {
    out << "warning: entry " << entry + 1 << " lies inside the training range (in-sample forecast)\n";
  }

  ForecastRecord record;
  try {
    record = forecast_improved(map, series, space, point, config.correction());
  } catch (const NoPlateauError& e) {
    out << "entry " << entry << ": no plateau found (" << e.what() << ")\n";
    return kExitNoPlateau;
  }

  out << "entry " << entry << " -> forecast of entry " << entry + 1 << '\n';
  out << "GF forecast:  " << format_full(record.gf_forecast) << '\n';
  if (record.has(kNoCorrectionNeeded)) {
    out << "no correction needed: past forecasts in the window are exact\n";
  } else {
    out << "k*:           " << *record.k_star << '\n';
  }
  out << "IGF forecast: " << format_full(record.igf_forecast) << '\n';
  if (record.actual) {
    out << "actual:       " << format_full(*record.actual) << '\n';
    out << "GF error %:   " << human(*record.gf_error_pct) << '\n';
    out << "IGF error %:  " << human(*record.igf_error_pct) << '\n';
  }
  if (!record.delta_magnitudes.empty()) {
    const std::string path =
        ensure_output_dir(config) + "/delta_entry" + std::to_string(entry) + ".csv";
    auto file = open_output(path);
    write_table_dump_csv(file, record.delta_magnitudes);
    out << "difference column written to " << path << '\n';
  }
  return kExitOk;
}

int cmd_survey(const RunConfig& config, std::ostream& out) {
  const auto series = load_series(config, out);
  const auto space = reconstruct(series, config.embedding());
  const auto entries = config.survey_entries();
  const std::string dir = ensure_output_dir(config);

  SurveyReport report;
  if (!entries.empty()) {
    const auto map = PolynomialMap::load(config.map_path());
    SurveyOptions options;
    options.correction = config.correction();
    options.exclude_near_zero = config.get_bool("survey.exclude_near_zero");
    options.jobs = config.jobs();
    report = survey(map, series, space, entries, options);
  }

  auto report_file = open_output(dir + "/report.csv");
  write_report_csv(report_file, report);
  auto ratio_file = open_output(dir + "/log_ratio.csv");
  write_log_ratio_csv(ratio_file, report.log_ratio);
  auto summary_file = open_output(dir + "/summary.txt");
  write_summary(summary_file, report);
  write_summary(out, report);
  out << "wrote report.csv, log_ratio.csv and summary.txt to " << dir << '\n';
  return kExitOk;
}

int run_command(const std::string& name, const RunConfig& config, std::ostream& out,
                std::ostream& err) {
  try {
    if (name == "generate") return cmd_generate(config, out);
    if (name == "embed") return cmd_embed(config, out);
    if (name == "fit") return cmd_fit(config, out);
    if (name == "forecast") return cmd_forecast(config, out);
    if (name == "survey") return cmd_survey(config, out);
    err << "unknown command '" << name << "'\n";
    return kExitUsage;
  } catch (const NoPlateauError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNoPlateau;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace plateau::cli
