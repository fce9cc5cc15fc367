#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace plateau {

// Dense column-major matrix; columns are contiguous so the SIMD kernels can
// stream them.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }

  std::span<double> column(std::size_t c) { return {data_.data() + c * rows_, rows_}; }
  std::span<const double> column(std::size_t c) const { return {data_.data() + c * rows_, rows_}; }

  // Copy keeping only the listed rows, in the given order.
  Matrix select_rows(std::span<const std::size_t> rows) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Rank test threshold on σ_min/σ_max of the column-equilibrated matrix.
inline constexpr double kRankTolerance = 1e-12;

// Minimises ‖A·c − b‖₂ with Householder QR on the column-equilibrated
// matrix. Throws UnderdeterminedError if rows < cols and RankDeficientError
// when σ_min/σ_max < kRankTolerance.
std::vector<double> solve_least_squares(const Matrix& a, std::span<const double> b);

// Singular values of a square or tall matrix, descending (one-sided Jacobi).
std::vector<double> singular_values(const Matrix& a);

// Aᵀ·v.
std::vector<double> transpose_times(const Matrix& a, std::span<const double> v);
// A·x.
std::vector<double> times(const Matrix& a, std::span<const double> x);

}  // namespace plateau
