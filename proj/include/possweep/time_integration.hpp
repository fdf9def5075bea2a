#ifndef POSSWEEP_TIME_INTEGRATION_HPP
#define POSSWEEP_TIME_INTEGRATION_HPP

#include "possweep/field.hpp"
#include "possweep/limiter.hpp"
#include "possweep/sweep.hpp"
#include "possweep/weno.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace possweep {

struct RunConfig {
  double cfl = 0.5;
  double final_time = 1.0;
  bool limiter = true;
  std::size_t max_full_sweeps = 100;
  bool source = false;
};

/// dt = cfl dx / alpha in 1D, cfl / (alpha_x / dx + alpha_y / dy) in 2D,
/// clipped so that time + dt does not pass final_time.
double compute_dt(std::array<double, 2> alpha, double dx, double dy, double cfl, int dims,
                  double remaining = std::numeric_limits<double>::infinity());

enum class FailureKind { Infeasible, NonTermination, Negativity, Domain };

/// A solver stage failed; carries where it happened.
class StageFailure : public std::runtime_error {
public:
  StageFailure(FailureKind kind, int stage, double time, const std::string& what);
  FailureKind kind;
  int stage;
  double time;
};

/// Evaluates du/dt for a stage field: fills halos, returns the residual
/// (same layout as Field::data()) and the alpha used for splitting.
template <std::size_t N> using StageOperator = std::function<ResidualOutput<N>(Field<N>&)>;

/// Post-processes a stage field in place (1-based stage index).
template <std::size_t N> using StageLimiter = std::function<void(Field<N>&, int)>;

/// One SSP-RK3 step:
///   u1 = u + dt L(u)
///   u2 = 3/4 u + 1/4 (u1 + dt L(u1))
///   u  = 1/3 u + 2/3 (u2 + dt L(u2))
/// with `limit` applied after each of the three stage updates. Errors
/// thrown by `op` or `limit` are rethrown as StageFailure with the stage
/// index attached.
template <std::size_t N>
void rk3_step(Field<N>& field, double dt, const StageOperator<N>& op,
              const StageLimiter<N>& limit, double time = 0.0);

/// Per-stage diagnostics.
struct StageRecord {
  std::size_t step = 0;
  int stage = 0;
  double time = 0.0;
  double dt = 0.0;
  double alpha_step = 0.0;  // max direction alpha at the start of the step (sets dt)
  double alpha_stage = 0.0; // max direction alpha used by this stage's splitting
  std::size_t density_modified = 0;
  std::size_t pressure_sweeps = 0;
  std::size_t positive_branch = 0;
  std::size_t negative_branch = 0;
  double min_density = 0.0;
  double min_pressure = 0.0;
};

struct IntegrationResult {
  double time = 0.0;
  std::size_t steps = 0;
  double min_density = std::numeric_limits<double>::infinity();
  double min_pressure = std::numeric_limits<double>::infinity();
  std::vector<StageRecord> log;
};

/// Physics hooks beyond the flux divergence.
template <std::size_t N> struct SourceTerm {
  std::function<Conserved<N>(const Conserved<N>&)> rate;
};

/// Marches `field` to config.final_time with SSP-RK3 and the sweeping
/// limiter after every stage. alpha (hence dt) is taken from the data at the
/// start of each step; each stage's splitting uses its own global alpha.
///
/// With the limiter on, every stage must leave rho >= eps and p >= eps.
/// With it off, a stage with non-finite data, rho <= 0 or p <= 0 raises a
/// Negativity StageFailure.
template <std::size_t N>
IntegrationResult integrate(Field<N>& field, const PressureFunctional& f, const RunConfig& config,
                            SweepStats& stats, const SourceTerm<N>* source = nullptr,
                            const DiscretizationOptions& opts = {});

/// Same, accumulating into `result` so that the stage log and the time
/// reached survive a StageFailure.
template <std::size_t N>
void integrate_into(IntegrationResult& result, Field<N>& field, const PressureFunctional& f,
                    const RunConfig& config, SweepStats& stats,
                    const SourceTerm<N>* source = nullptr, const DiscretizationOptions& opts = {});

/// Minimum density and pressure over fluid cells.
template <std::size_t N>
std::array<double, 2> min_density_pressure(const Field<N>& field, const PressureFunctional& f);

} // namespace possweep

#endif // POSSWEEP_TIME_INTEGRATION_HPP
