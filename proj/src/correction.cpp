#include "plateau/correction.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "plateau/error.hpp"
#include "plateau/simd/kernels.hpp"

namespace plateau {

DifferenceTable::DifferenceTable(std::size_t anchor, std::vector<double> epsilon, std::size_t k_max)
    : anchor_(anchor), epsilon_(std::move(epsilon)) {
  if (epsilon_.empty()) throw InvalidArgument("difference table needs at least one error value");
  if (k_max >= epsilon_.size()) {
    throw InvalidArgument("k_max " + std::to_string(k_max) + " needs a window of more than " +
                          std::to_string(epsilon_.size()) + " points");
  }
  if (anchor_ < window()) throw InvalidArgument("anchor precedes the start of its window");
  for (double e : epsilon_) {
    if (!std::isfinite(e)) throw InvalidArgument("forecast error is not finite");
  }
  rows_.reserve(k_max + 1);
  rows_.push_back(epsilon_);
  for (std::size_t k = 1; k <= k_max; ++k) {
    const auto& prev = rows_.back();
    std::vector<double> next(prev.size() - 1);
    simd::backward_difference(prev, next);
    rows_.push_back(std::move(next));
  }
}

std::span<const double> DifferenceTable::row(std::size_t k) const {
  if (k >= rows_.size()) {
    throw InvalidArgument("difference row " + std::to_string(k) + " not computed (k_max " +
                          std::to_string(k_max()) + ")");
  }
  return rows_[k];
}

DifferenceTable DifferenceTable::extended(std::size_t k_max) const {
  return DifferenceTable(anchor_, epsilon_, k_max);
}

DifferenceTable build_difference_table(std::span<const double> actuals,
                                       std::span<const double> forecasts, std::size_t k_max) {
  return build_difference_table(actuals, forecasts, k_max, actuals.empty() ? 0 : actuals.size() - 1);
}

DifferenceTable build_difference_table(std::span<const double> actuals,
                                       std::span<const double> forecasts, std::size_t k_max,
                                       std::size_t anchor) {
  if (actuals.size() != forecasts.size()) {
    throw DimensionError("actuals and forecasts differ in length");
  }
  std::vector<double> epsilon(actuals.size());
  for (std::size_t i = 0; i < actuals.size(); ++i) {
    if (!std::isfinite(actuals[i]) || !std::isfinite(forecasts[i])) {
      throw InvalidArgument("non-finite actual or forecast at window position " + std::to_string(i));
    }
    epsilon[i] = actuals[i] - forecasts[i];
  }
  return DifferenceTable(anchor, std::move(epsilon), k_max);
}

namespace {

// Scans magnitudes for the first k with m[k] ≤ m[k+1], with k + 1 ≤ last.
std::optional<std::size_t> scan(std::span<const double> m, std::size_t last) {
  for (std::size_t k = 0; k < last; ++k) {
    if (m[k] <= m[k + 1]) return k;
  }
  return std::nullopt;
}

}  // namespace

PlateauResult find_plateau(std::span<const double> magnitudes, const PlateauSearch& search,
                           std::size_t first_k) {
  if (search.n_start == 0 || search.n_step == 0) {
    throw InvalidArgument("plateau search needs n_start, n_step ≥ 1");
  }
  if (magnitudes.size() < 2) throw InvalidArgument("plateau search needs at least two orders");
  const std::size_t last_available = first_k + magnitudes.size() - 1;
  const std::size_t limit = std::min(search.n_cap, last_available);
  if (limit <= first_k) throw InvalidArgument("plateau search cap is below the first order");

  for (std::size_t n = search.n_start;; n += search.n_step) {
    const std::size_t upto = std::min(n, limit);
    if (upto > first_k) {
      const auto column = magnitudes.first(upto - first_k + 1);
      const bool all_zero = std::all_of(column.begin(), column.end(), [](double v) { return v == 0.0; });
      if (!all_zero) {
        if (auto k = scan(column, upto - first_k)) {
          return PlateauResult{first_k + *k, upto, std::vector<double>(column.begin(), column.end())};
        }
      } else if (upto == limit) {
        throw NoPlateauError("all differences vanish through k = " + std::to_string(upto));
      }
    }
    if (upto == limit) break;
  }
  throw NoPlateauError("|Δ^k ε| keeps decreasing through k = " + std::to_string(limit) +
                       "; the series is too sparse for the correction");
}

PlateauResult find_plateau(const DifferenceTable& table, const PlateauSearch& search) {
  const std::size_t needed = std::min(search.n_cap, table.window());
  if (table.k_max() < needed) return find_plateau(table.extended(needed), search);
  std::vector<double> magnitudes(table.k_max() + 1);
  for (std::size_t k = 0; k < magnitudes.size(); ++k) magnitudes[k] = std::abs(table.at_anchor(k));
  return find_plateau(magnitudes, search, 0);
}

double corrected_forecast(double gf_forecast, const DifferenceTable& table, std::size_t k_star) {
  if (k_star > table.k_max()) {
    throw InvalidArgument("k* = " + std::to_string(k_star) + " exceeds the table depth " +
                          std::to_string(table.k_max()));
  }
  double correction = 0.0;
  for (std::size_t k = 0; k <= k_star; ++k) correction += table.at_anchor(k);
  return gf_forecast + correction;
}

std::size_t point_for_entry(const PhaseSpace& space, std::size_t entry) {
  if (entry == 0) throw InvalidArgument("entries are numbered from 1");
  return space.point_for_newest(entry - 1);
}

ForecastRecord forecast_improved(const PolynomialMap& map, const TimeSeries& series,
                                 const PhaseSpace& space, std::size_t point_index,
                                 const CorrectionSettings& settings) {
  const std::size_t a = settings.window;
  if (a < 1) throw InvalidArgument("correction window must be ≥ 1");
  if (a < settings.search.n_cap) {
    throw InvalidArgument("correction window " + std::to_string(a) + " is smaller than n_cap " +
                          std::to_string(settings.search.n_cap));
  }
  if (point_index >= space.size()) throw InvalidArgument("point index beyond the phase space");
  if (point_index < a + 1) {
    throw InvalidArgument("window of " + std::to_string(a + 1) + " past forecasts at point " +
                          std::to_string(point_index) + " reaches before the series start");
  }

  ForecastRecord record;
  record.point_index = point_index;
  record.entry = space.newest_index(point_index) + 1;
  record.target_index = forecast_target_index(point_index, space.params());

  // Forecasts from points P−a−1..P−1 target the newest components of P−a..P.
  std::vector<double> actuals(a + 1), forecasts(a + 1);
  for (std::size_t i = 0; i <= a; ++i) {
    const std::size_t source = point_index - a - 1 + i;
    forecasts[i] = predict(map, space.point(source));
    actuals[i] = series[space.newest_index(source + 1)];
  }
  record.gf_forecast = predict(map, space.point(point_index));
  record.igf_forecast = record.gf_forecast;

  const bool perfect = std::equal(actuals.begin(), actuals.end(), forecasts.begin());
  if (perfect) {
    record.flags |= kNoCorrectionNeeded;
  } else {
    const auto table =
        build_difference_table(actuals, forecasts, std::min(settings.search.n_cap, a), point_index);
    try {
      const auto plateau = find_plateau(table, settings.search);
      record.k_star = plateau.k_star;
      record.delta_magnitudes = plateau.magnitudes;
      record.igf_forecast = corrected_forecast(record.gf_forecast, table, plateau.k_star);
    } catch (const NoPlateauError&) {
      if (!settings.fallback_on_no_plateau) throw;
      record.flags |= kNoPlateau;
      for (std::size_t k = 0; k <= table.k_max(); ++k) {
        record.delta_magnitudes.push_back(std::abs(table.at_anchor(k)));
      }
    }
  }

  if (record.target_index < series.size()) {
    const double actual = series[record.target_index];
    record.actual = actual;
    record.gf_error_pct = percentage_error(actual, record.gf_forecast);
    record.igf_error_pct = percentage_error(actual, record.igf_forecast);
    if (std::abs(actual) < kNearZeroActual) record.flags |= kNearZeroActualFlag;
  }
  return record;
}

void write_table_dump_csv(std::ostream& out, std::span<const double> magnitudes, std::size_t first_k) {
  out << "k,abs_delta_k\n";
  for (std::size_t i = 0; i < magnitudes.size(); ++i) {
    out << (first_k + i) << ',' << format_full(magnitudes[i]) << '\n';
  }
}

}  // namespace plateau
