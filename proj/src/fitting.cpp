#include "plateau/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "plateau/error.hpp"
#include "plateau/simd/kernels.hpp"

namespace plateau {

PolynomialMap::PolynomialMap(MonomialBasis basis, std::vector<double> coefficients)
    : basis_(std::move(basis)), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != basis_.size()) {
    throw DimensionError("map has " + std::to_string(coefficients_.size()) +
                         " coefficients for a basis of " + std::to_string(basis_.size()));
  }
  for (double c : coefficients_) {
    if (!std::isfinite(c)) throw NumericalError("map coefficient is not finite");
  }
}

MultivariatePolynomial PolynomialMap::to_polynomial() const {
  MultivariatePolynomial::TermMap terms;
  for (std::size_t i = 0; i < basis_.size(); ++i) terms.emplace(basis_[i], coefficients_[i]);
  return MultivariatePolynomial(basis_.variable_count(), std::move(terms));
}

void PolynomialMap::write(std::ostream& out) const {
  out << "# degree=" << basis_.max_degree() << " m=" << basis_.variable_count()
      << " constant=" << (basis_.include_constant() ? "true" : "false") << '\n';
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    out << format_full(coefficients_[i]);
    for (unsigned e : basis_[i].exponents()) out << ' ' << e;
    out << '\n';
  }
}

PolynomialMap PolynomialMap::read(std::istream& in) {
  std::string header;
  while (std::getline(in, header) && header.find_first_not_of(" \t\r") == std::string::npos) {
  }
  if (header.empty() || header[0] != '#') throw InvalidArgument("map file lacks '# degree=...' header");
  long degree = -1, m = -1;
  int constant = -1;
  std::istringstream fields(header.substr(1));
  std::string token;
  while (fields >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "degree") degree = std::stol(value);
    else if (key == "m") m = std::stol(value);
    else if (key == "constant") constant = value == "true" ? 1 : value == "false" ? 0 : -1;
  }
  if (degree < 0 || m < 1 || constant < 0) throw InvalidArgument("malformed map header: " + header);

  MonomialBasis basis(static_cast<std::size_t>(m), static_cast<unsigned>(degree), constant == 1);
  const auto poly = MultivariatePolynomial::read(in, basis.variable_count());
  std::vector<double> coeffs(basis.size(), 0.0);
  for (const auto& [monomial, coeff] : poly.terms()) {
    const std::size_t idx = basis.index_of(monomial);
    if (idx == basis.size()) {
      throw InvalidArgument("map term " + monomial.to_string() + " is outside the declared basis");
    }
    coeffs[idx] = coeff;
  }
  return PolynomialMap(std::move(basis), std::move(coeffs));
}

void PolynomialMap::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write(out);
  if (!out) throw IoError("failed writing '" + path + "'");
}

PolynomialMap PolynomialMap::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open map file '" + path + "'");
  return read(in);
}

double predict(const PolynomialMap& map, std::span<const double> point) {
  if (point.size() != map.input_dimension()) {
    throw DimensionError("point has " + std::to_string(point.size()) + " components, map expects " +
                         std::to_string(map.input_dimension()));
  }
  std::vector<double> values(map.basis().size());
  map.basis().evaluate(point, values);
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) sum += values[i] * map.coefficients()[i];
  return sum;
}

SeriesRange default_training_range(std::size_t series_length) {
  return {0, std::max<std::size_t>(1, series_length / 4)};
}

DesignSystem build_design_matrix(const PhaseSpace& space, const MonomialBasis& basis,
                                 const TimeSeries& series, SeriesRange range,
                                 std::size_t target_component) {
  const std::size_t m = space.dimension();
  if (basis.variable_count() != m) throw DimensionError("basis and phase space dimensions differ");
  if (target_component == static_cast<std::size_t>(-1)) target_component = m - 1;
  if (target_component >= m) throw InvalidArgument("target component out of range");
  range.end = std::min(range.end, series.size());
  const std::size_t lag = space.params().lag;

  DesignSystem system;
  for (std::size_t r = range.begin; r < space.size(); ++r) {
    const std::size_t target = r + 1 + target_component * lag;
    if (target >= range.end || space.newest_index(r) >= range.end) break;
    system.point_indices.push_back(r);
    system.targets.push_back(series[target]);
  }
  const std::size_t rows = system.point_indices.size();
  if (rows < basis.size()) {
    throw UnderdeterminedError("only " + std::to_string(rows) + " usable rows for " +
                               std::to_string(basis.size()) + " basis monomials");
  }

  // Variable columns, then every monomial as (parent monomial column) × (one variable column).
  std::vector<std::vector<double>> variables(m, std::vector<double>(rows));
  for (std::size_t row = 0; row < rows; ++row) {
    const auto pt = space.point(system.point_indices[row]);
    for (std::size_t v = 0; v < m; ++v) variables[v][row] = pt[v];
  }
  system.matrix = Matrix(rows, basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const ExponentTuple& mono = basis[i];
    auto column = system.matrix.column(i);
    if (mono.degree() == 0) {
      std::fill(column.begin(), column.end(), 1.0);
      continue;
    }
    std::size_t v = 0;
    while (mono[v] == 0) ++v;
    std::vector<unsigned> parent_exps(mono.exponents().begin(), mono.exponents().end());
    --parent_exps[v];
    const ExponentTuple parent(std::move(parent_exps));
    if (parent.degree() == 0) {
      std::copy(variables[v].begin(), variables[v].end(), column.begin());
      continue;
    }
    const std::size_t p = basis.index_of(parent);  // graded-lex puts it earlier
    simd::multiply(system.matrix.column(p), variables[v], column);
  }
  return system;
}

DesignSystem build_design_matrix(const PhaseSpace& space, const MonomialBasis& basis,
                                 const TimeSeries& series) {
  return build_design_matrix(space, basis, series, SeriesRange{0, series.size()});
}

std::vector<double> fit_least_squares(const Matrix& matrix, std::span<const double> targets) {
  return solve_least_squares(matrix, targets);
}

std::vector<std::size_t> fold_bounds(std::size_t rows, std::size_t folds) {
  if (folds == 0) throw InvalidArgument("fold count must be ≥ 1");
  if (folds > rows) {
    throw InvalidArgument(std::to_string(folds) + " folds requested for " + std::to_string(rows) +
                          " rows");
  }
  std::vector<std::size_t> bounds(folds + 1);
  for (std::size_t f = 0; f <= folds; ++f) bounds[f] = f * rows / folds;
  return bounds;
}

std::vector<double> fit_kfold_coefficients(const Matrix& matrix, std::span<const double> targets,
                                           std::size_t folds) {
  if (targets.size() != matrix.rows()) throw DimensionError("targets and matrix rows differ");
  if (folds == 1) return fit_least_squares(matrix, targets);

  const auto bounds = fold_bounds(matrix.rows(), folds);
  std::vector<double> mean(matrix.cols(), 0.0);
  std::vector<std::size_t> keep;
  std::vector<double> kept_targets;
  for (std::size_t f = 0; f < folds; ++f) {
    keep.clear();
    kept_targets.clear();
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
      if (r >= bounds[f] && r < bounds[f + 1]) continue;
      keep.push_back(r);
      kept_targets.push_back(targets[r]);
    }
    std::vector<double> coeffs;
    try {
      coeffs = fit_least_squares(matrix.select_rows(keep), kept_targets);
    } catch (const UnderdeterminedError& e) {
      throw UnderdeterminedError("fold " + std::to_string(f + 1) + " of " + std::to_string(folds) +
                                 ": " + e.what());
    } catch (const RankDeficientError& e) {
      throw RankDeficientError("fold " + std::to_string(f + 1) + " of " + std::to_string(folds) +
                                   ": " + e.what(),
                               e.condition_ratio());
    }
    for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += coeffs[j];
  }
  for (double& c : mean) c /= static_cast<double>(folds);
  return mean;
}

PolynomialMap fit_kfold(const TimeSeries& series, const PhaseSpace& space, const FitConfig& config) {
  if (config.degree < 1) throw InvalidArgument("fit degree must be ≥ 1");
  if (config.folds < 1) throw InvalidArgument("fold count must be ≥ 1");
  MonomialBasis basis(space.dimension(), config.degree, config.include_constant);
  const auto system =
      build_design_matrix(space, basis, series, config.training, config.target_component);
  auto coeffs = fit_kfold_coefficients(system.matrix, system.targets, config.folds);
  return PolynomialMap(std::move(basis), std::move(coeffs));
}

}  // namespace plateau
