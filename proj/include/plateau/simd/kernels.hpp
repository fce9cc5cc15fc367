#pragma once

// Data-parallel inner loops shared by fitting and correction.
//
// Each kernel has a scalar reference implementation and, where the target
// supports it, an AVX2 variant. The variant is picked once at startup from
// CPUID and can be pinned with set_active_isa() or PLATEAU_ISA=scalar|avx2.

#include <span>
#include <string_view>

namespace plateau::simd {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa) noexcept;

// Best ISA this binary was built for and the CPU supports.
Isa detected_isa() noexcept;
bool isa_supported(Isa isa) noexcept;

Isa active_isa() noexcept;
// Throws InvalidArgument if the ISA is not supported on this machine.
void set_active_isa(Isa isa);

// Σ a[i]·b[i]. Lane-wise accumulation means the AVX2 result can differ from
// the scalar one by rounding.
double dot(std::span<const double> a, std::span<const double> b);

// y[i] += alpha·x[i]. Bit-identical across ISAs (no fused multiply-add).
void axpy(double alpha, std::span<const double> x, std::span<double> y);

// out[i] = a[i]·b[i]. out may alias a or b. Bit-identical across ISAs.
void multiply(std::span<const double> a, std::span<const double> b,
              std::span<double> out);

// out[i] = in[i+1] − in[i], out.size() == in.size() − 1. Bit-identical.
void backward_difference(std::span<const double> in, std::span<double> out);

}  // namespace plateau::simd
