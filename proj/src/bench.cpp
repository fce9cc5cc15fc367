#include "plateau/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "plateau/error.hpp"

namespace plateau {

double percentage_error(double actual, double forecast) noexcept {
  return 100.0 * std::abs((actual - forecast) / actual);
}

std::string ForecastRecord::flag_string() const {
  std::string out;
  auto add = [&](RecordFlag f, const char* name) {
    if (!has(f)) return;
    if (!out.empty()) out += '|';
    out += name;
  };
  add(kNoPlateau, "no_plateau");
  add(kNoCorrectionNeeded, "no_correction_needed");
  add(kNearZeroActualFlag, "near_zero_actual");
  return out;
}

std::vector<std::size_t> equally_spaced(std::size_t start, std::size_t stop, std::size_t step) {
  if (step == 0) throw InvalidArgument("step must be ≥ 1");
  std::vector<std::size_t> out;
  for (std::size_t e = start; e <= stop; e += step) out.push_back(e);
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

SurveyReport survey(const PolynomialMap& map, const TimeSeries& series, const PhaseSpace& space,
                    std::span<const std::size_t> entries, const SurveyOptions& options) {
  std::vector<std::size_t> points(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    points[i] = point_for_entry(space, entries[i]);
    if (points[i] < options.correction.window + 1) {
      throw InvalidArgument("entry " + std::to_string(entries[i]) +
                            " leaves no room for a correction window of " +
                            std::to_string(options.correction.window));
    }
  }

  CorrectionSettings settings = options.correction;
  settings.fallback_on_no_plateau = true;

  SurveyReport report;
  report.records.resize(entries.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        report.records[i] = forecast_improved(map, series, space, points[i], settings);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(options.jobs, 1, std::max<std::size_t>(1, points.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  double gf_sum = 0.0, igf_sum = 0.0;
  for (const auto& r : report.records) {
    if (!r.gf_error_pct || !r.igf_error_pct) continue;
    if (options.exclude_near_zero && r.has(kNearZeroActualFlag)) continue;
    gf_sum += *r.gf_error_pct;
    igf_sum += *r.igf_error_pct;
    ++report.included;
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  report.mean_gf_error_pct = report.included ? gf_sum / static_cast<double>(report.included) : nan;
  report.mean_igf_error_pct = report.included ? igf_sum / static_cast<double>(report.included) : nan;
  report.log_ratio = log_ratio_series(report);
  return report;
}

std::vector<LogRatioPoint> log_ratio_series(const SurveyReport& report) {
  std::vector<LogRatioPoint> out;
  for (const auto& r : report.records) {
    if (!r.gf_error_pct || !r.igf_error_pct) continue;
    const double gf = *r.gf_error_pct;
    const double igf = *r.igf_error_pct;
    LogRatioPoint point{r.entry, 0.0, false};
    if (gf == igf) {
      point.value = 0.0;
    } else if (igf == 0.0 || !std::isfinite(gf)) {
      point.value = kLogRatioCap;
      point.capped = true;
    } else if (gf == 0.0 || !std::isfinite(igf)) {
      point.value = -kLogRatioCap;
      point.capped = true;
    } else {
      point.value = std::log(gf / igf);
    }
    out.push_back(point);
  }
  return out;
}

namespace {

std::string optional_full(const std::optional<double>& v) { return v ? format_full(*v) : ""; }

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

void write_report_csv(std::ostream& out, const SurveyReport& report) {
  out << "entry,actual,gf_forecast,igf_forecast,k_star,gf_error_pct,igf_error_pct,flags\n";
  for (const auto& r : report.records) {
    out << r.entry << ',' << optional_full(r.actual) << ',' << format_full(r.gf_forecast) << ','
        << format_full(r.igf_forecast) << ',' << (r.k_star ? std::to_string(*r.k_star) : "") << ','
        << optional_full(r.gf_error_pct) << ',' << optional_full(r.igf_error_pct) << ','
        << r.flag_string() << '\n';
  }
}

void write_log_ratio_csv(std::ostream& out, std::span<const LogRatioPoint> points) {
  out << "entry,log_ratio\n";
  for (const auto& p : points) out << p.entry << ',' << format_full(p.value) << '\n';
}

void write_summary(std::ostream& out, const SurveyReport& report) {
  std::vector<double> ratios;
  for (const auto& p : report.log_ratio) ratios.push_back(p.value);
  out << "records: " << report.records.size() << " (" << report.included << " in means)\n";
  out << "mean GF error %: " << short_number(report.mean_gf_error_pct) << '\n';
  out << "mean IGF error %: " << short_number(report.mean_igf_error_pct) << '\n';
  out << "median ln(GF/IGF): " << short_number(median(ratios)) << '\n';
  for (const auto& r : report.records) {
    if (r.flags != 0) out << "flagged entry " << r.entry << ": " << r.flag_string() << '\n';
  }
}

}  // namespace plateau
