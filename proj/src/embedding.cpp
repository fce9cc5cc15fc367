#include "plateau/embedding.hpp"

#include <ostream>

#include "plateau/error.hpp"

namespace plateau {

void EmbeddingParams::validate() const {
  if (lag < 1) throw InvalidArgument("embedding lag must be ≥ 1");
  if (dimension < 1) throw InvalidArgument("embedding dimension must be ≥ 1");
}

PhaseSpace::PhaseSpace(EmbeddingParams params, std::size_t series_length,
                       std::vector<double> coordinates)
    : params_(params), series_length_(series_length), coordinates_(std::move(coordinates)) {
  params_.validate();
  if (coordinates_.size() % params_.dimension != 0) {
    throw DimensionError("coordinate buffer is not a whole number of points");
  }
  point_count_ = coordinates_.size() / params_.dimension;
}

std::span<const double> PhaseSpace::point(std::size_t i) const {
  if (i >= point_count_) {
    throw InvalidArgument("point index " + std::to_string(i) + " out of range (" +
                          std::to_string(point_count_) + " points)");
  }
  return std::span<const double>(coordinates_).subspan(i * params_.dimension, params_.dimension);
}

std::size_t PhaseSpace::point_for_newest(std::size_t series_index) const {
  if (series_index < params_.span() || series_index - params_.span() >= point_count_) {
    throw InvalidArgument("series index " + std::to_string(series_index) +
                          " is not the newest component of any point");
  }
  return series_index - params_.span();
}

PhaseSpace reconstruct(const TimeSeries& series, const EmbeddingParams& params) {
  params.validate();
  const std::size_t n = series.size();
  if (n <= params.span()) {
    throw InvalidArgument("series of length " + std::to_string(n) +
                          " is too short for lag " + std::to_string(params.lag) +
                          " and dimension " + std::to_string(params.dimension) +
                          "; need at least " + std::to_string(params.span() + 1) + " samples");
  }
  const std::size_t count = n - params.span();
  std::vector<double> coords;
  coords.reserve(count * params.dimension);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < params.dimension; ++j) coords.push_back(series[i + j * params.lag]);
  }
  return PhaseSpace(params, n, std::move(coords));
}

std::size_t forecast_target_index(std::size_t point_index, const EmbeddingParams& params) {
  return point_index + params.span() + 1;
}

void write_phase_space_csv(std::ostream& out, const PhaseSpace& space) {
  out << 'i';
  for (std::size_t j = 0; j < space.dimension(); ++j) out << ",c" << (j + 1);
  out << '\n';
  for (std::size_t i = 0; i < space.size(); ++i) {
    out << i;
    for (double v : space.point(i)) out << ',' << format_full(v);
    out << '\n';
  }
}

}  // namespace plateau
