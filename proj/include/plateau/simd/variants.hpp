#pragma once

// Direct access to each kernel variant, bypassing dispatch. Used by the
// equivalence tests and benchmarks; library code calls kernels.hpp.

#include <cstddef>

namespace plateau::simd {

namespace scalar {
double dot(const double* a, const double* b, std::size_t n) noexcept;
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;
void multiply(const double* a, const double* b, double* out, std::size_t n) noexcept;
void backward_difference(const double* in, double* out, std::size_t n_out) noexcept;
}  // namespace scalar

#if defined(PLATEAU_HAVE_AVX2)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n) noexcept;
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;
void multiply(const double* a, const double* b, double* out, std::size_t n) noexcept;
void backward_difference(const double* in, double* out, std::size_t n_out) noexcept;
}  // namespace avx2
#endif

}  // namespace plateau::simd
