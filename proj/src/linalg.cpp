#include "plateau/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "plateau/error.hpp"
#include "plateau/simd/kernels.hpp"

namespace plateau {

Matrix Matrix::select_rows(std::span<const std::size_t> rows) const {
  Matrix out(rows.size(), cols_);
  for (std::size_t c = 0; c < cols_; ++c) {
    for (std::size_t r = 0; r < rows.size(); ++r) out(r, c) = (*this)(rows[r], c);
  }
  return out;
}

std::vector<double> singular_values(const Matrix& a) {
  Matrix u = a;
  const std::size_t n = u.cols();
  constexpr int kMaxSweeps = 60;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = simd::dot(u.column(p), u.column(p));
        const double beta = simd::dot(u.column(q), u.column(q));
        const double gamma = simd::dot(u.column(p), u.column(q));
        if (gamma == 0.0 || std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = c * t;
        auto cp = u.column(p);
        auto cq = u.column(q);
        for (std::size_t i = 0; i < u.rows(); ++i) {
          const double x = cp[i];
          const double y = cq[i];
          cp[i] = c * x - s * y;
          cq[i] = s * x + c * y;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) sv[j] = std::sqrt(simd::dot(u.column(j), u.column(j)));
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

std::vector<double> solve_least_squares(const Matrix& a, std::span<const double> b) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m) throw DimensionError("target vector length does not match matrix rows");
  if (n == 0) throw InvalidArgument("least squares with no unknowns");
  if (m < n) {
    throw UnderdeterminedError("underdetermined system: " + std::to_string(m) + " rows for " +
                               std::to_string(n) + " unknowns");
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (double v : a.column(j)) {
      if (!std::isfinite(v)) throw NumericalError("design matrix has non-finite entries");
    }
  }

  // Equilibrate columns so the rank test sees relative, not absolute, scale.
  Matrix qr = a;
  std::vector<double> scale(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double norm = std::sqrt(simd::dot(qr.column(j), qr.column(j)));
    scale[j] = norm > 0.0 ? norm : 1.0;
    for (double& v : qr.column(j)) v /= scale[j];
  }
  std::vector<double> rhs(b.begin(), b.end());

  std::vector<double> v(m);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t len = m - j;
    auto col = qr.column(j).subspan(j, len);
    const double norm = std::sqrt(simd::dot(col, col));
    if (norm == 0.0) continue;
    const double alpha = col[0] > 0.0 ? -norm : norm;
    std::span<double> vj(v.data(), len);
    std::copy(col.begin(), col.end(), vj.begin());
    vj[0] -= alpha;
    const double vnorm2 = simd::dot(vj, vj);
    if (vnorm2 == 0.0) continue;
    for (std::size_t k = j + 1; k < n; ++k) {
      auto target = qr.column(k).subspan(j, len);
      simd::axpy(-2.0 * simd::dot(vj, target) / vnorm2, vj, target);
    }
    std::span<double> rhs_tail(rhs.data() + j, len);
    simd::axpy(-2.0 * simd::dot(vj, rhs_tail) / vnorm2, vj, rhs_tail);
    col[0] = alpha;
    std::fill(col.begin() + 1, col.end(), 0.0);
  }

  Matrix r(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i <= j; ++i) r(i, j) = qr(i, j);
  }
  const auto sv = singular_values(r);
  const double ratio = sv.front() > 0.0 ? sv.back() / sv.front() : 0.0;
  if (!(ratio >= kRankTolerance)) {
    throw RankDeficientError("rank-deficient design matrix (sigma_min/sigma_max = " +
                                 std::to_string(ratio) + ")",
                             ratio);
  }

  std::vector<double> coeffs(n);
  for (std::size_t i = n; i-- > 0;) {
    double sum = rhs[i];
    for (std::size_t k = i + 1; k < n; ++k) sum -= r(i, k) * coeffs[k];
    coeffs[i] = sum / r(i, i);
  }
  for (std::size_t j = 0; j < n; ++j) coeffs[j] /= scale[j];
  return coeffs;
}

std::vector<double> transpose_times(const Matrix& a, std::span<const double> v) {
  if (v.size() != a.rows()) throw DimensionError("vector length does not match matrix rows");
  std::vector<double> out(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) out[j] = simd::dot(a.column(j), v);
  return out;
}

std::vector<double> times(const Matrix& a, std::span<const double> x) {
  if (x.size() != a.cols()) throw DimensionError("vector length does not match matrix columns");
  std::vector<double> out(a.rows(), 0.0);
  for (std::size_t j = 0; j < a.cols(); ++j) simd::axpy(x[j], a.column(j), out);
  return out;
}

}  // namespace plateau
