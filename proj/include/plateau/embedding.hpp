#pragma once

// Delay-coordinate reconstruction: point i = (x[i], x[i+p], ..., x[i+(m-1)p]).
// Indices are 0-based here; reports convert to 1-based entries.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "plateau/series.hpp"

namespace plateau {

struct EmbeddingParams {
  std::size_t lag = 1;        // p, in samples
  std::size_t dimension = 1;  // m

  void validate() const;
  // (m-1)·p: offset of the newest component within a point.
  std::size_t span() const noexcept { return (dimension - 1) * lag; }
};

class PhaseSpace {
 public:
  PhaseSpace(EmbeddingParams params, std::size_t series_length, std::vector<double> coordinates);

  const EmbeddingParams& params() const noexcept { return params_; }
  std::size_t dimension() const noexcept { return params_.dimension; }
  std::size_t size() const noexcept { return point_count_; }
  std::size_t series_length() const noexcept { return series_length_; }

  std::span<const double> point(std::size_t i) const;
  // Series index of component j of point i.
  std::size_t base_index(std::size_t i, std::size_t j) const noexcept { return i + j * params_.lag; }
  // Series index of the newest component of point i.
  std::size_t newest_index(std::size_t i) const noexcept { return i + params_.span(); }
  // Point whose newest component sits at series index s (requires s ≥ span()).
  std::size_t point_for_newest(std::size_t series_index) const;

 private:
  EmbeddingParams params_;
  std::size_t series_length_;
  std::size_t point_count_;
  std::vector<double> coordinates_;  // row-major, m per point
};

PhaseSpace reconstruct(const TimeSeries& series, const EmbeddingParams& params);

// Series index of the value a one-step forecast from point P predicts: the
// newest component of point P+1.
std::size_t forecast_target_index(std::size_t point_index, const EmbeddingParams& params);

// "i,c1,...,cm".
void write_phase_space_csv(std::ostream& out, const PhaseSpace& space);

}  // namespace plateau
