#ifndef POSSWEEP_RUNNER_HPP
#define POSSWEEP_RUNNER_HPP

#include "possweep/problems.hpp"
#include "possweep/sweep.hpp"
#include "possweep/time_integration.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace possweep {

/// Overrides applied on top of a problem's canonical parameters.
struct RunOptions {
  std::optional<std::size_t> nx;
  std::optional<std::size_t> ny;
  std::optional<double> cfl;
  std::optional<double> final_time;
  bool limiter = true;
  double eps = kDefaultEps;
  std::size_t max_full_sweeps = 100;
  /// Empty: nothing is written.
  std::filesystem::path out_dir;
};

enum class RunStatus { Ok, Infeasible, NonTermination, Negativity, Domain };

std::string_view status_name(RunStatus s) noexcept;

struct RunSummary {
  std::string problem;
  std::size_t nx = 0, ny = 0;
  double cfl = 0.0;
  double final_time = 0.0; // requested
  double time_reached = 0.0;
  std::size_t steps = 0;
  double wall_time = 0.0;
  double min_density = 0.0;
  double min_pressure = 0.0;
  bool limiter = true;
  double eps = kDefaultEps;
  SweepStats stats;
  std::vector<double> initial_totals;
  std::vector<double> final_totals;
  /// (final - initial) / |initial|, or the absolute change where initial is 0.
  std::vector<double> drift;
  double dx = 0.0, dy = 0.0;
  std::string simd_backend;
  RunStatus status = RunStatus::Ok;
  std::string message;
  /// Error norms against the exact solution at time_reached, when known.
  std::optional<ErrorNorms> error;
  std::vector<StageRecord> log;

  bool ok() const noexcept { return status == RunStatus::Ok; }
};

/// Runs a canonical problem to its final time. Solver failures are reported
/// through RunSummary::status; an unknown problem or invalid override throws
/// std::invalid_argument.
///
/// With a non-empty out_dir writes initial_field.csv, final_field.csv,
/// sweep_log.csv and summary.json (the final field holds the last state
/// reached if the run failed).
RunSummary run_problem(const std::string& name, const RunOptions& opts);

/// Relative (or absolute, for zero initial totals) change per component.
std::vector<double> conservation_drift(const std::vector<double>& initial,
                                       const std::vector<double>& final_totals);

struct ConvergenceRow {
  std::size_t resolution = 0;
  ErrorNorms error;
  std::optional<double> l1_order;
  std::optional<double> linf_order;
};

/// Runs the problem at each n x n resolution and tabulates density errors
/// and observed orders. Throws std::invalid_argument for problems without
/// an exact solution and std::runtime_error if any run fails.
std::vector<ConvergenceRow> convergence(const std::string& name,
                                        const std::vector<std::size_t>& resolutions,
                                        const RunOptions& base = {});

/// CSV with resolution, L1 error, L1 order, Linf error, Linf order.
std::string convergence_table(const std::vector<ConvergenceRow>& rows);

} // namespace possweep

#endif // POSSWEEP_RUNNER_HPP
