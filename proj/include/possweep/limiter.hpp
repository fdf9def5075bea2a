#ifndef POSSWEEP_LIMITER_HPP
#define POSSWEEP_LIMITER_HPP

#include "possweep/field.hpp"
#include "possweep/sweep.hpp"

#include <cstddef>
#include <vector>

namespace possweep {

struct LimiterOptions {
  std::size_t max_full_sweeps = 100;
};

/// What one limiter invocation did.
struct LimiterReport {
  bool triggered = false;
  std::size_t density_modified = 0;
  PressureSweepResult pressure;
};

/// Sweep orderings over the fluid cells of a field, as indices into
/// Field::fluid_states(). 1D fields get the single natural ordering; 2D
/// fields get {Sweep I, Sweep II} with solid cells skipped.
template <std::size_t N> std::vector<std::vector<std::size_t>> sweep_orderings(const Field<N>& field);

/// Positivity post-processing of the fluid interior of a field.
///
/// Returns immediately when every density and pressure is already >= eps.
/// Otherwise runs the density sweep along the first ordering and then the
/// pressure sweep, alternating orderings between full sweeps. Halo cells
/// are not touched. `stats` is updated as one RK stage.
template <std::size_t N>
LimiterReport apply_limiter(Field<N>& field, const PressureFunctional& f,
                            const LimiterOptions& opts, SweepStats& stats);

/// True if every fluid state has rho >= eps and p >= eps (nothing to sweep).
template <std::size_t N> bool sweep_free(const Field<N>& field, const PressureFunctional& f);

} // namespace possweep

#endif // POSSWEEP_LIMITER_HPP
