#ifndef POSSWEEP_SWEEP_HPP
#define POSSWEEP_SWEEP_HPP

// Conservative positivity-preserving sweeps.
//
// The density sweep is the classical scalar forward/backward mass transfer.
// The pressure sweep walks an ordered sequence of states and, at every node
// whose pressure is below eps, replaces the pair (node, next-in-direction)
// by a convex exchange that keeps their sum fixed. Because pressure is
// concave, every exchange raises the pair's summed pressure and shrinks the
// variance around the (unchanged) mean.

#include "possweep/state.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace possweep {

/// Raised when the mean state itself is outside the admissible set, so no
/// conservative redistribution can succeed.
class InfeasibleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised when the pressure sweep exceeds its full-sweep budget.
class NonTerminationError : public std::runtime_error {
public:
  NonTerminationError(std::size_t sweeps, double worst_pressure, std::size_t worst_index);
  std::size_t sweeps;
  double worst_pressure;
  std::size_t worst_index;
};

/// Sweep counters. "Full sweep" is one forward plus one backward pass.
struct SweepStats {
  std::size_t density_sweeps_total = 0;
  std::size_t pressure_sweeps_this_call = 0;
  std::size_t pressure_sweeps_total = 0;
  std::size_t pressure_sweeps_max_per_stage = 0;
  std::size_t stages_with_sweeps = 0;
  // Branch frequencies of the nodal adjustment.
  std::size_t positive_branch_adjustments = 0;
  std::size_t negative_branch_adjustments = 0;
  std::size_t coincident_skips = 0;

  /// Total full sweeps over the stages in which at least one ran; 0 if none did.
  double average_sweeps() const noexcept {
    return stages_with_sweeps == 0
               ? 0.0
               : static_cast<double>(pressure_sweeps_total) / static_cast<double>(stages_with_sweeps);
  }
};

/// One forward and one backward pass over rho. Returns how many entries were
/// raised to eps. Throws InfeasibleError when mean(rho) <= eps.
std::size_t density_sweep(std::span<double> rho, double eps);

enum class AdjustBranch { PositiveNeighbor, NegativeNeighbor, Coincident };

template <std::size_t N> struct NodeAdjustResult {
  Conserved<N> state;
  double t = 0.0;
  AdjustBranch branch = AdjustBranch::PositiveNeighbor;
};

/// Moves u1 (with p(u1) < eps) toward its neighbor u2 along the segment
/// between them: u1* = (1 - t) u1 + t u2.
///
/// With p(u2) > eps, t is the linear-interpolation root of p toward eps,
/// which Jensen's inequality turns into a guarantee p(u1*) >= eps. If the
/// evaluated p(u1*) still rounds below eps, t is increased geometrically
/// (never past 1) until it does not.
/// Otherwise t is the scaling-limiter distance estimate toward ubar,
/// rescaled onto the u1-u2 segment and capped at 1/4. When u1 == u2 the
/// second branch has no direction and t stays 0.
template <std::size_t N>
NodeAdjustResult<N> node_adjust(const Conserved<N>& u1, const Conserved<N>& u2,
                                const Conserved<N>& ubar, const PressureFunctional& f);

/// Everything an observer needs to verify one paired exchange.
template <std::size_t N> struct Adjustment {
  std::size_t negative_index = 0;
  std::size_t neighbor_index = 0;
  Conserved<N> negative_before;
  Conserved<N> neighbor_before;
  Conserved<N> negative_after;
  Conserved<N> neighbor_after;
  double t = 0.0;
  AdjustBranch branch = AdjustBranch::PositiveNeighbor;
};

template <std::size_t N> using AdjustObserver = std::function<void(const Adjustment<N>&)>;

struct PressureSweepResult {
  std::size_t full_sweeps = 0;
  std::size_t positive_branch = 0;
  std::size_t negative_branch = 0;
  std::size_t coincident = 0;
};

/// Repeats full sweeps until every pressure is >= eps.
///
/// `states` is the canonical storage and defines the mean. Full sweep k
/// (1-based) walks states in the order orderings[(k - 1) % orderings.size()];
/// an empty `orderings` means storage order. All densities must already be
/// >= eps.
///
/// Throws InfeasibleError if p(mean) <= eps, NonTerminationError once
/// max_full_sweeps have run without success.
template <std::size_t N>
PressureSweepResult pressure_sweep(std::span<Conserved<N>> states, const PressureFunctional& f,
                                   std::size_t max_full_sweeps,
                                   std::span<const std::vector<std::size_t>> orderings = {},
                                   const AdjustObserver<N>* observer = nullptr);

enum class SnakeVariant { SweepI, SweepII };

struct GridIndex {
  std::size_t i = 0;
  std::size_t j = 0;
  friend bool operator==(const GridIndex&, const GridIndex&) = default;
};

/// Serpentine linearisation of an nx-by-ny grid (0-based indices).
/// SweepI walks j-lines, alternating the direction of i; SweepII walks
/// i-lines, alternating the direction of j.
std::vector<GridIndex> snake_order(std::size_t nx, std::size_t ny, SnakeVariant variant);

} // namespace possweep

#endif // POSSWEEP_SWEEP_HPP
