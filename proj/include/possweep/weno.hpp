#ifndef POSSWEEP_WENO_HPP
#define POSSWEEP_WENO_HPP

// Fifth-order characteristic-wise finite-difference WENO operator with
// global Lax-Friedrichs flux splitting, applied dimension by dimension.

#include "possweep/eigensystem.hpp"
#include "possweep/field.hpp"
#include "possweep/state.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace possweep {

/// Per-direction maximum of |velocity component| + sound speed over fluid
/// interior and edge-halo cells (halo cells carry inflow states the stencils
/// see). The second entry is 0 for 1D fields.
///
/// Requires a real sound speed everywhere: throws std::domain_error on a
/// non-finite state, rho <= 0 or p < 0.
template <std::size_t N>
std::array<double, 2> global_alpha(const Field<N>& field, const PressureFunctional& f);

template <std::size_t N> struct SplitFlux {
  Conserved<N> plus;
  Conserved<N> minus;
};

/// Lax-Friedrichs splitting f(+/-) = (u +/- flux / alpha) / 2.
template <std::size_t N>
SplitFlux<N> flux_split(const Conserved<N>& u, const Conserved<N>& flux, double alpha) noexcept {
  SplitFlux<N> s;
  for (std::size_t c = 0; c < N; ++c) {
    const double scaled = flux[c] / alpha;
    s.plus[c] = 0.5 * (u[c] + scaled);
    s.minus[c] = 0.5 * (u[c] - scaled);
  }
  return s;
}

/// WENO5 value at the right face of stencil[2]. Mirror the stencil to
/// reconstruct the left-going part at the same face.
double weno5_reconstruct(std::span<const double, 5> stencil) noexcept;

struct DiscretizationOptions {
  /// Reconstruct in characteristic variables. Off = componentwise, kept
  /// for debugging only.
  bool characteristic = true;
};

template <std::size_t N> struct ResidualOutput {
  /// Same layout as Field::data(); halo and solid entries are zero.
  std::vector<double> residual;
  std::array<double, 2> alpha{};
};

/// L(u) = -(f_{i+1/2} - f_{i-1/2}) / dx [- (g_{j+1/2} - g_{j-1/2}) / dy].
/// Halo cells must already be filled (apply_boundary).
template <std::size_t N>
ResidualOutput<N> compute_residual(const Field<N>& field, const PressureFunctional& f,
                                   const DiscretizationOptions& opts = {});

/// Residual of one grid line in its own frame (normal momentum is
/// component 1). `line` holds n + 6 states, three halo states at each end;
/// `out` receives the n interior residuals.
template <std::size_t N>
void line_residual(std::span<const Conserved<N>> line, double alpha, double spacing,
                   const PressureFunctional& f, const DiscretizationOptions& opts,
                   std::span<Conserved<N>> out);

/// Arrhenius consumption of the reactant: only the rhoY slot is non-zero,
/// omega = -K rhoY exp(-Ea / (p / rho)).
Conserved<5> reactive_source(const Conserved<5>& w, const PressureFunctional& f, double K,
                             double Ea);

} // namespace possweep

#endif // POSSWEEP_WENO_HPP
