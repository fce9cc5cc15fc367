#pragma once

// GF vs IGF surveys over a test region and their aggregates.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "plateau/correction.hpp"
#include "plateau/record.hpp"

namespace plateau {

// start, start+step, ..., up to stop inclusive (1-based entries).
std::vector<std::size_t> equally_spaced(std::size_t start, std::size_t stop, std::size_t step);

struct SurveyOptions {
  CorrectionSettings correction{};
  bool exclude_near_zero = false;
  std::size_t jobs = 1;
};

struct LogRatioPoint {
  std::size_t entry = 0;
  double value = 0.0;  // ln(gf_error / igf_error)
  bool capped = false;
};

// Stand-in for ln(gf/igf) when one of the errors is exactly zero.
inline constexpr double kLogRatioCap = 50.0;

struct SurveyReport {
  std::vector<ForecastRecord> records;  // ordered as the requested entries
  double mean_gf_error_pct = 0.0;       // NaN when no record qualifies
  double mean_igf_error_pct = 0.0;
  std::size_t included = 0;
  std::vector<LogRatioPoint> log_ratio;
};

// One record per 1-based entry (the last known value P). Every entry must
// leave room for the full correction window; no-plateau records are kept
// with the GF value and a flag.
SurveyReport survey(const PolynomialMap& map, const TimeSeries& series, const PhaseSpace& space,
                    std::span<const std::size_t> entries, const SurveyOptions& options = {});

std::vector<LogRatioPoint> log_ratio_series(const SurveyReport& report);

double median(std::vector<double> values);

// "entry,actual,gf_forecast,igf_forecast,k_star,gf_error_pct,igf_error_pct,flags"
void write_report_csv(std::ostream& out, const SurveyReport& report);
// "entry,log_ratio"
void write_log_ratio_csv(std::ostream& out, std::span<const LogRatioPoint> points);
// Human-readable aggregate summary at 6 significant digits.
void write_summary(std::ostream& out, const SurveyReport& report);

}  // namespace plateau
