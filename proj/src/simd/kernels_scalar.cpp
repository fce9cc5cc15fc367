#include "plateau/simd/variants.hpp"

namespace plateau::simd::scalar {

double dot(const double* a, const double* b, std::size_t n) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void multiply(const double* a, const double* b, double* out, std::size_t n) noexcept {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void backward_difference(const double* in, double* out, std::size_t n_out) noexcept {
  for (std::size_t i = 0; i < n_out; ++i) out[i] = in[i + 1] - in[i];
}

}  // namespace plateau::simd::scalar
