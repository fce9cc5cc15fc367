#include <atomic>
#include <cstdlib>
#include <string>

#include "plateau/error.hpp"
#include "plateau/simd/kernels.hpp"
#include "plateau/simd/variants.hpp"

namespace plateau::simd {
namespace {

struct KernelTable {
  double (*dot)(const double*, const double*, std::size_t) noexcept;
  void (*axpy)(double, const double*, double*, std::size_t) noexcept;
  void (*multiply)(const double*, const double*, double*, std::size_t) noexcept;
  void (*backward_difference)(const double*, double*, std::size_t) noexcept;
};

constexpr KernelTable kScalarTable{scalar::dot, scalar::axpy, scalar::multiply,
                                   scalar::backward_difference};
#if defined(PLATEAU_HAVE_AVX2)
constexpr KernelTable kAvx2Table{avx2::dot, avx2::axpy, avx2::multiply,
                                 avx2::backward_difference};
#endif

bool cpu_has_avx2() noexcept {
#if defined(PLATEAU_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* table_for(Isa isa) noexcept {
#if defined(PLATEAU_HAVE_AVX2)
  if (isa == Isa::avx2) return &kAvx2Table;
#endif
  (void)isa;
  return &kScalarTable;
}

Isa initial_isa() noexcept {
  Isa isa = detected_isa();
  if (const char* env = std::getenv("PLATEAU_ISA")) {
    std::string requested(env);
    if (requested == "scalar") isa = Isa::scalar;
    else if (requested == "avx2" && isa_supported(Isa::avx2)) isa = Isa::avx2;
  }
  return isa;
}

std::atomic<Isa>& active() noexcept {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

const KernelTable& current() noexcept { return *table_for(active().load(std::memory_order_relaxed)); }

void require_same_size(std::size_t a, std::size_t b, const char* kernel) {
  if (a != b) {
    throw DimensionError(std::string(kernel) + ": operand sizes differ (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

Isa detected_isa() noexcept { return cpu_has_avx2() ? Isa::avx2 : Isa::scalar; }

bool isa_supported(Isa isa) noexcept {
  return isa == Isa::scalar || (isa == Isa::avx2 && cpu_has_avx2());
}

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw InvalidArgument("ISA '" + std::string(to_string(isa)) + "' is not available here");
  }
  active().store(isa, std::memory_order_relaxed);
}

double dot(std::span<const double> a, std::span<const double> b) {
  require_same_size(a.size(), b.size(), "dot");
  return current().dot(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  require_same_size(x.size(), y.size(), "axpy");
  current().axpy(alpha, x.data(), y.data(), x.size());
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  require_same_size(a.size(), b.size(), "multiply");
  require_same_size(a.size(), out.size(), "multiply");
  current().multiply(a.data(), b.data(), out.data(), a.size());
}

void backward_difference(std::span<const double> in, std::span<double> out) {
  if (in.empty()) {
    require_same_size(out.size(), 0, "backward_difference");
    return;
  }
  require_same_size(in.size() - 1, out.size(), "backward_difference");
  current().backward_difference(in.data(), out.data(), out.size());
}

}  // namespace plateau::simd
