#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace plateau {

// |actual| below this makes the percentage error meaningless; the record is
// kept but flagged.
inline constexpr double kNearZeroActual = 1e-9;

// 100·|(actual − forecast)/actual|. Infinite or huge near zero actuals; see
// kNearZeroActual.
double percentage_error(double actual, double forecast) noexcept;

enum RecordFlag : unsigned {
  kNoPlateau = 1u << 0,
  kNoCorrectionNeeded = 1u << 1,
  kNearZeroActualFlag = 1u << 2,
};

// One GF vs IGF forecast. `entry` is the 1-based series entry of the last
// known value P; the forecast targets entry P+1.
struct ForecastRecord {
  std::size_t entry = 0;
  std::size_t point_index = 0;
  std::size_t target_index = 0;  // 0-based series index being forecast
  std::optional<double> actual;
  double gf_forecast = 0.0;
  double igf_forecast = 0.0;
  std::optional<std::size_t> k_star;
  std::optional<double> gf_error_pct;
  std::optional<double> igf_error_pct;
  unsigned flags = 0;
  std::vector<double> delta_magnitudes;  // |Δ^k ε(P)| for k = 0..n_final

  bool has(RecordFlag flag) const noexcept { return (flags & flag) != 0; }
  // "no_plateau|near_zero_actual" etc., empty when unflagged.
  std::string flag_string() const;
};

}  // namespace plateau
