#pragma once

// Global polynomial map M̄: delay vector → one-step-ahead value, fitted by
// linear least squares with contiguous k-fold coefficient averaging.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "plateau/embedding.hpp"
#include "plateau/linalg.hpp"
#include "plateau/polycore.hpp"
#include "plateau/series.hpp"

namespace plateau {

class PolynomialMap {
 public:
  PolynomialMap(MonomialBasis basis, std::vector<double> coefficients);

  const MonomialBasis& basis() const noexcept { return basis_; }
  std::span<const double> coefficients() const noexcept { return coefficients_; }
  std::size_t input_dimension() const noexcept { return basis_.variable_count(); }

  MultivariatePolynomial to_polynomial() const;

  // "# degree=<d> m=<m> constant=<bool>" then one "c e1 ... em" line per
  // basis monomial (zeros included), graded-lex order.
  void write(std::ostream& out) const;
  static PolynomialMap read(std::istream& in);
  void save(const std::string& path) const;
  static PolynomialMap load(const std::string& path);

 private:
  MonomialBasis basis_;
  std::vector<double> coefficients_;
};

double predict(const PolynomialMap& map, std::span<const double> point);

// Half-open range of series indices [begin, end).
struct SeriesRange {
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct FitConfig {
  unsigned degree = 2;
  bool include_constant = false;
  std::size_t folds = 10;
  SeriesRange training{};
  // Component of point P+1 used as target; defaults to the newest (m−1).
  std::size_t target_component = static_cast<std::size_t>(-1);
};

// First quarter of the series (at least one sample).
SeriesRange default_training_range(std::size_t series_length);

struct DesignSystem {
  Matrix matrix;                         // rows × basis size
  std::vector<double> targets;           // one per row
  std::vector<std::size_t> point_indices;  // phase-space point behind each row
};

// One row per point whose components and target all lie inside `range`.
DesignSystem build_design_matrix(const PhaseSpace& space, const MonomialBasis& basis,
                                 const TimeSeries& series, SeriesRange range,
                                 std::size_t target_component = static_cast<std::size_t>(-1));
DesignSystem build_design_matrix(const PhaseSpace& space, const MonomialBasis& basis,
                                 const TimeSeries& series);

std::vector<double> fit_least_squares(const Matrix& matrix, std::span<const double> targets);

// Contiguous fold boundaries: fold f holds rows [bounds[f], bounds[f+1]).
std::vector<std::size_t> fold_bounds(std::size_t rows, std::size_t folds);

// Mean of the K coefficient vectors fitted on each fold's complement.
// K = 1 fits all rows.
std::vector<double> fit_kfold_coefficients(const Matrix& matrix, std::span<const double> targets,
                                           std::size_t folds);

PolynomialMap fit_kfold(const TimeSeries& series, const PhaseSpace& space, const FitConfig& config);

}  // namespace plateau
