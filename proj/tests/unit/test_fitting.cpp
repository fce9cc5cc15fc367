#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "plateau/dynamics.hpp"
#include "plateau/error.hpp"
#include "plateau/fitting.hpp"
#include "test_support.hpp"

using namespace plateau;
using namespace plateau::testing;

namespace {

// Normal equations solved by Cholesky: an independent route to the
// least-squares solution for well-conditioned problems.
std::vector<double> normal_equations_solve(const std::vector<std::vector<double>>& rows,
                                           const std::vector<double>& t) {
  const std::size_t n = rows.front().size();
  std::vector<std::vector<double>> g(n, std::vector<double>(n, 0.0));
  std::vector<double> rhs(n, 0.0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      rhs[i] += rows[r][i] * t[r];
      for (std::size_t j = 0; j < n; ++j) g[i][j] += rows[r][i] * rows[r][j];
    }
  }
  std::vector<std::vector<double>> l(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = g[i][j];
      for (std::size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      l[i][j] = i == j ? std::sqrt(s) : s / l[j][j];
    }
  }
  std::vector<double> y(n), x(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = rhs[i];
    for (std::size_t k = 0; k < i; ++k) s -= l[i][k] * y[k];
    y[i] = s / l[i][i];
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = y[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= l[k][i] * x[k];
    x[i] = s / l[i][i];
  }
  return x;
}

Matrix to_matrix(const std::vector<std::vector<double>>& rows) {
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::vector<std::vector<double>> random_rows(std::size_t m, std::size_t n) {
  std::vector<std::vector<double>> rows(m);
  for (auto& r : rows) r = random_vector(n, -2.0, 2.0);
  return rows;
}

double max_rel_diff(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(b[i])));
  }
  return worst;
}

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Hénon map in delay form: x[n+1] = 1 − 1.4 x[n]² + 0.3 x[n−1]. Over the
// basis {1, x1, x2, x1², x1x2, x2²} of (x[n−1], x[n]) the coefficients are
// (1, 0.3, 0, 0, 0, −1.4).
TimeSeries henon_series(std::size_t n) {
  std::vector<double> x{0.1, 0.2};
  while (x.size() < n) {
    const std::size_t k = x.size();
    x.push_back(1.0 - 1.4 * x[k - 1] * x[k - 1] + 0.3 * x[k - 2]);
  }
  return TimeSeries(x);
}
const std::vector<double> kHenonCoefficients{1.0, 0.3, 0.0, 0.0, 0.0, -1.4};

}  // namespace

TEST_CASE("design matrix for a hand-checkable case") {
  const TimeSeries series({1.0, 2.0, 3.0});
  const auto space = reconstruct(series, EmbeddingParams{1, 1});
  const MonomialBasis basis(1, 1, true);
  const auto system = build_design_matrix(space, basis, series);
  REQUIRE(system.matrix.rows() == 2);
  REQUIRE(system.matrix.cols() == 2);
  CHECK(system.matrix(0, 0) == 1.0);
  CHECK(system.matrix(0, 1) == 1.0);
  CHECK(system.matrix(1, 0) == 1.0);
  CHECK(system.matrix(1, 1) == 2.0);
  CHECK(system.targets == std::vector<double>{2.0, 3.0});
}

TEST_CASE("design matrix columns are the basis monomials at each point") {
  const TimeSeries series(random_vector(80, -3.0, 3.0));
  const auto space = reconstruct(series, EmbeddingParams{2, 3});
  for (bool constant : {true, false}) {
    const MonomialBasis basis(3, 3, constant);
    const auto system = build_design_matrix(space, basis, series);
    CHECK(system.matrix.cols() == basis.size());
    std::vector<double> expected(basis.size());
    for (std::size_t r = 0; r < system.matrix.rows(); ++r) {
      basis.evaluate(space.point(system.point_indices[r]), expected);
      for (std::size_t c = 0; c < basis.size(); ++c) {
        CHECK(system.matrix(r, c) == doctest::Approx(expected[c]).epsilon(1e-14));
      }
      CHECK(system.targets[r] == series[forecast_target_index(system.point_indices[r], space.params())]);
    }
  }
  CHECK(MonomialBasis(3, 2, true).size() == 10);
  CHECK(MonomialBasis(3, 2, false).size() == 9);
}

TEST_CASE("training range excludes rows whose target falls outside it") {
  const std::vector<double> x0{-0.3336666667, -0.3336666667, 21.9996666667};
  const auto series = sample_coordinate(rk4_integrate(lorenz_field({}), x0, 0.01, 599, 10), 0);
  const EmbeddingParams params{6, 3};
  const auto space = reconstruct(series, params);
  std::size_t expected_rows = 0;
  for (std::size_t r = 0; r < space.size(); ++r) {
    if (forecast_target_index(r, params) < 140) ++expected_rows;
  }
  const auto system = build_design_matrix(space, MonomialBasis(3, 2, false), series, SeriesRange{0, 140});
  CHECK(system.matrix.rows() == expected_rows);
  CHECK(system.matrix.rows() == 127);

  CHECK_THROWS_AS(build_design_matrix(space, MonomialBasis(3, 2, false), series, SeriesRange{0, 20}),
                  UnderdeterminedError);
}

TEST_CASE("fit_least_squares basic cases") {
  CHECK(fit_least_squares(to_matrix({{1, 0}, {0, 1}}), std::vector<double>{3.5, -2.0}) ==
        std::vector<double>{3.5, -2.0});
  const auto mean = fit_least_squares(to_matrix({{1}, {1}}), std::vector<double>{0.0, 2.0});
  CHECK(mean[0] == doctest::Approx(1.0).epsilon(1e-15));

  CHECK_THROWS_AS(fit_least_squares(to_matrix({{1, 2, 3}}), std::vector<double>{1.0}),
                  UnderdeterminedError);
  CHECK_THROWS_AS(fit_least_squares(to_matrix({{1, 2}, {2, 4}, {3, 6}}), std::vector<double>{1, 2, 3}),
                  RankDeficientError);
  CHECK_THROWS_AS(fit_least_squares(to_matrix({{1, 0}, {1, 0}, {1, 0}}), std::vector<double>{1, 2, 3}),
                  RankDeficientError);
  CHECK_THROWS_AS(fit_least_squares(to_matrix({{1}, {1}}), std::vector<double>{1.0}), DimensionError);
}

TEST_CASE("least squares agrees with normal equations and keeps the residual orthogonal") {
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(1, 8));
    const std::size_t m = n + static_cast<std::size_t>(uniform_int(0, 30));
    const auto rows = random_rows(m, n);
    const auto t = random_vector(m, -5.0, 5.0);
    const auto a = to_matrix(rows);
    const auto c = fit_least_squares(a, t);
    CHECK(max_rel_diff(c, normal_equations_solve(rows, t)) < 1e-8);

    auto residual = times(a, c);
    for (std::size_t i = 0; i < m; ++i) residual[i] -= t[i];
    CHECK(norm(transpose_times(a, residual)) <= 1e-8 * norm(transpose_times(a, t)) + 1e-300);

    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng());
    std::vector<double> shuffled_t(m);
    for (std::size_t i = 0; i < m; ++i) shuffled_t[i] = t[order[i]];
    CHECK(max_rel_diff(fit_least_squares(a.select_rows(order), shuffled_t), c) <= 1e-10);
  }
}

TEST_CASE("noiseless quadratic map data is recovered") {
  const auto series = henon_series(400);
  const auto space = reconstruct(series, EmbeddingParams{1, 2});
  const MonomialBasis basis(2, 2, true);
  const auto system = build_design_matrix(space, basis, series);
  const auto c = fit_least_squares(system.matrix, system.targets);
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(std::abs(c[i] - kHenonCoefficients[i]) <= 1e-8 * std::max(1.0, std::abs(kHenonCoefficients[i])));
  }

  for (std::size_t folds : {1u, 2u, 5u, 10u}) {
    FitConfig config;
    config.degree = 2;
    config.include_constant = true;
    config.folds = folds;
    config.training = SeriesRange{0, series.size()};
    const auto map = fit_kfold(series, space, config);
    double worst = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      worst = std::max(worst, std::abs(map.coefficients()[i] - kHenonCoefficients[i]));
    }
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("fit_kfold with one fold is the plain fit") {
  const auto rows = random_rows(40, 4);
  const auto t = random_vector(40);
  const auto a = to_matrix(rows);
  CHECK(fit_kfold_coefficients(a, t, 1) == fit_least_squares(a, t));
}

TEST_CASE("fit_kfold averages the per-fold fits of a naive reference loop") {
  const std::size_t rows_n = 9, cols = 3;
  const std::size_t folds = rows_n - cols + 1;  // 7 folds of one or two rows
  const auto rows = random_rows(rows_n, cols);
  const auto t = random_vector(rows_n);
  std::vector<double> expected(cols, 0.0);
  for (std::size_t f = 0; f < folds; ++f) {
    const std::size_t lo = f * rows_n / folds, hi = (f + 1) * rows_n / folds;
    std::vector<std::vector<double>> kept;
    std::vector<double> kept_t;
    for (std::size_t r = 0; r < rows_n; ++r) {
      if (r < lo || r >= hi) {
        kept.push_back(rows[r]);
        kept_t.push_back(t[r]);
      }
    }
    const auto c = normal_equations_solve(kept, kept_t);
    for (std::size_t j = 0; j < cols; ++j) expected[j] += c[j] / static_cast<double>(folds);
  }
  CHECK(max_rel_diff(fit_kfold_coefficients(to_matrix(rows), t, folds), expected) < 1e-9);
}

TEST_CASE("identical folds average to the single fit") {
  const std::size_t block = 12, folds = 4;
  const auto rows = random_rows(block, 3);
  const auto t = random_vector(block);
  std::vector<std::vector<double>> stacked;
  std::vector<double> stacked_t;
  for (std::size_t f = 0; f < folds; ++f) {
    stacked.insert(stacked.end(), rows.begin(), rows.end());
    stacked_t.insert(stacked_t.end(), t.begin(), t.end());
  }
  const auto single = fit_least_squares(to_matrix(rows), t);
  CHECK(max_rel_diff(fit_kfold_coefficients(to_matrix(stacked), stacked_t, folds), single) < 1e-12);
}

TEST_CASE("fold errors name the fold") {
  const auto rows = random_rows(4, 3);
  const auto t = random_vector(4);
  try {
    fit_kfold_coefficients(to_matrix(rows), t, 2);  // each complement keeps 2 rows for 3 unknowns
    FAIL("expected an underdetermined fold");
  } catch (const UnderdeterminedError& e) {
    CHECK(std::string(e.what()).find("fold") != std::string::npos);
  }
  CHECK_THROWS_AS(fit_kfold_coefficients(to_matrix(rows), t, 5), InvalidArgument);
  CHECK(fold_bounds(10, 3) == std::vector<std::size_t>{0, 3, 6, 10});
}

TEST_CASE("predict") {
  const PolynomialMap zero(MonomialBasis(3, 2, false), std::vector<double>(9, 0.0));
  CHECK(predict(zero, std::vector<double>{1.0, 2.0, 3.0}) == 0.0);
  CHECK_THROWS_AS(predict(zero, std::vector<double>{1.0}), DimensionError);

  // Sum of the nine reference coefficients, computed independently.
  const auto reference = reference_lorenz_map();
  const auto heartbeat = reference_heartbeat_map();
  double reference_sum = 0.0;
  for (const auto& [mono, c] : reference.terms()) reference_sum += c;
  MonomialBasis basis(3, 2, false);
  std::vector<double> coeffs(basis.size());
  for (const auto& [mono, c] : reference.terms()) coeffs[basis.index_of(mono)] = c;
  const PolynomialMap lorenz(basis, coeffs);
  CHECK(std::abs(predict(lorenz, std::vector<double>{1.0, 1.0, 1.0}) - reference_sum) <= 1e-12);
  CHECK(predict(lorenz, std::vector<double>{1.0, 1.0, 1.0}) == doctest::Approx(0.972407647294).epsilon(1e-10));

  std::vector<double> heart(basis.size());
  for (const auto& [mono, c] : heartbeat.terms()) heart[basis.index_of(mono)] = c;
  CHECK(predict(PolynomialMap(basis, heart), std::vector<double>{0.0, 0.0, 0.0}) == 0.0);

  const std::vector<double> point{0.4, -1.2, 2.5};
  CHECK(predict(lorenz, point) == doctest::Approx(naive_evaluate(reference, point)).epsilon(1e-13));
}

TEST_CASE("map persistence round-trips with the degree header") {
  MonomialBasis basis(3, 2, false);
  const PolynomialMap map(basis, random_vector(basis.size(), -10, 10));
  std::stringstream text;
  map.write(text);
  CHECK(text.str().rfind("# degree=2 m=3 constant=false\n", 0) == 0);
  const auto back = PolynomialMap::read(text);
  CHECK(std::vector<double>(back.coefficients().begin(), back.coefficients().end()) ==
        std::vector<double>(map.coefficients().begin(), map.coefficients().end()));
  CHECK(back.basis().include_constant() == false);

  std::stringstream outside("# degree=1 m=2 constant=false\n1.0 1 1\n");
  CHECK_THROWS_AS(PolynomialMap::read(outside), InvalidArgument);
  std::stringstream headless("1.0 1 0\n");
  CHECK_THROWS_AS(PolynomialMap::read(headless), InvalidArgument);
  CHECK_THROWS_AS(PolynomialMap(basis, std::vector<double>(3, 0.0)), DimensionError);
}
