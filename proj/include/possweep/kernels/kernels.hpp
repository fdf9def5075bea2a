#ifndef POSSWEEP_KERNELS_KERNELS_HPP
#define POSSWEEP_KERNELS_KERNELS_HPP

// Data-parallel inner loops of the solver.
//
// Every kernel has a scalar reference implementation and, where the CPU
// supports it, an AVX2 variant. The variants perform the same IEEE
// operations in the same order (no FMA contraction), so they agree with the
// reference bit for bit; the equivalence tests enforce this.

#include <array>
#include <cstddef>
#include <string_view>

namespace possweep::kernels {

enum class Backend { Scalar, Avx2 };

/// Five stencil rows, each holding `n` values. Row s is the s-th point of
/// the upwind-biased stencil (s = 2 is the cell left of the interface).
using StencilRows = std::array<const double*, 5>;

struct KernelTable {
  Backend backend;
  /// out[k] = WENO5 reconstruction of (rows[0][k], ..., rows[4][k]).
  void (*weno5_batch)(const StencilRows& rows, double* out, std::size_t n);
  /// out[k] = a * base[k] + b * (u[k] + dt * rhs[k]).
  void (*stage_combine)(double* out, const double* base, const double* u, const double* rhs,
                        double a, double b, double dt, std::size_t n);
};

bool available(Backend b) noexcept;
std::string_view name(Backend b) noexcept;

/// Kernel table for a specific backend; falls back to scalar if unavailable.
const KernelTable& table(Backend b) noexcept;

/// The table used by the solver. Chosen once from the CPU and the
/// POSSWEEP_SIMD environment variable (scalar | avx2 | auto).
const KernelTable& active() noexcept;

/// Overrides the active backend (tests and benchmarks).
void set_active(Backend b) noexcept;

namespace scalar {
void weno5_batch(const StencilRows& rows, double* out, std::size_t n);
void stage_combine(double* out, const double* base, const double* u, const double* rhs, double a,
                   double b, double dt, std::size_t n);
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define POSSWEEP_HAVE_AVX2_KERNELS 1
namespace avx2 {
void weno5_batch(const StencilRows& rows, double* out, std::size_t n);
void stage_combine(double* out, const double* base, const double* u, const double* rhs, double a,
                   double b, double dt, std::size_t n);
} // namespace avx2
#endif

} // namespace possweep::kernels

#endif // POSSWEEP_KERNELS_KERNELS_HPP
