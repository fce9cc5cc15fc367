#pragma once

// Difference tables of one-step forecast errors and the plateau-truncated
// correction x(P+1) ≈ x̄(P+1) + Σ_{k≤k*} Δ^k ε(P).

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "plateau/embedding.hpp"
#include "plateau/fitting.hpp"
#include "plateau/record.hpp"
#include "plateau/series.hpp"

namespace plateau {

// Backward differences of ε(J) = actual(J) − forecast(J) over the window
// J = P−a..P. Row k holds Δ^k ε(J) for J = P−a+k..P (a+1−k values).
class DifferenceTable {
 public:
  DifferenceTable(std::size_t anchor, std::vector<double> epsilon, std::size_t k_max);

  std::size_t anchor() const noexcept { return anchor_; }
  std::size_t window() const noexcept { return epsilon_.size() - 1; }
  std::size_t k_max() const noexcept { return rows_.size() - 1; }
  std::span<const double> epsilon() const noexcept { return epsilon_; }
  std::span<const double> row(std::size_t k) const;
  // Δ^k ε(P).
  double at_anchor(std::size_t k) const { return row(k).back(); }
  // Same window with rows computed up to k_max (≤ window()).
  DifferenceTable extended(std::size_t k_max) const;

 private:
  std::size_t anchor_;
  std::vector<double> epsilon_;
  std::vector<std::vector<double>> rows_;
};

// anchor defaults to the window length a, so J runs over 0..a.
DifferenceTable build_difference_table(std::span<const double> actuals,
                                       std::span<const double> forecasts, std::size_t k_max);
DifferenceTable build_difference_table(std::span<const double> actuals,
                                       std::span<const double> forecasts, std::size_t k_max,
                                       std::size_t anchor);

struct PlateauSearch {
  std::size_t n_start = 10;
  std::size_t n_step = 10;
  std::size_t n_cap = 30;
};

struct PlateauResult {
  std::size_t k_star = 0;
  std::size_t n_final = 0;
  std::vector<double> magnitudes;  // |Δ^k ε(P)|, k = first_k..n_final
};

// Smallest k with |Δ^k ε(P)| ≤ |Δ^{k+1} ε(P)|, searching k < n for
// n = n_start, n_start + n_step, ... up to n_cap. Throws NoPlateauError when
// the magnitudes keep decreasing, or are all zero, through the cap.
PlateauResult find_plateau(const DifferenceTable& table, const PlateauSearch& search = {});
// Same rule on a precomputed column; magnitudes[i] is for k = first_k + i.
PlateauResult find_plateau(std::span<const double> magnitudes, const PlateauSearch& search = {},
                           std::size_t first_k = 0);

// gf_forecast + Σ_{k=0}^{k_star} Δ^k ε(P).
double corrected_forecast(double gf_forecast, const DifferenceTable& table, std::size_t k_star);

struct CorrectionSettings {
  std::size_t window = 40;  // a
  PlateauSearch search{};
  // Return the GF value flagged kNoPlateau instead of throwing.
  bool fallback_on_no_plateau = false;
};

// GF forecast from point P and its plateau-corrected IGF value. The window
// uses the errors of the forecasts from points P−a−1..P−1, whose targets are
// all known at P; nothing past the newest component of P is read except the
// actual used for the error columns. Throws NoPlateauError unless
// settings.fallback_on_no_plateau is set.
ForecastRecord forecast_improved(const PolynomialMap& map, const TimeSeries& series,
                                 const PhaseSpace& space, std::size_t point_index,
                                 const CorrectionSettings& settings = {});

// Point whose newest component is the given 1-based entry.
std::size_t point_for_entry(const PhaseSpace& space, std::size_t entry);

// "k,abs_delta_k".
void write_table_dump_csv(std::ostream& out, std::span<const double> magnitudes,
                          std::size_t first_k = 0);

}  // namespace plateau
