#ifndef POSSWEEP_PROBLEMS_HPP
#define POSSWEEP_PROBLEMS_HPP

#include "possweep/field.hpp"
#include "possweep/state.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace possweep {

/// Location handed to initial-condition functions.
struct GridPoint {
  double x = 0.0, y = 0.0;
  std::size_t i = 0, j = 0;
  std::size_t nx = 1, ny = 1;
  double dx = 1.0, dy = 1.0;
};

struct ReactionConstants {
  double K = 0.0;
  double activation_energy = 0.0;
  double heat_release = 0.0;
};

struct ProblemSpec {
  std::string name;
  int dims = 1;
  std::size_t components = 3;
  double x_min = 0.0, x_max = 1.0;
  double y_min = 0.0, y_max = 1.0;
  std::size_t nx = 100, ny = 1;
  double gamma = 1.4;
  double cfl = 0.5;
  double final_time = 1.0;
  std::function<Primitive(const GridPoint&)> initial;
  BoundarySpec boundary;
  /// Solid obstacle [x_min, x_min + solid_width] x [y_min, y_min + solid_height].
  double solid_width = 0.0;
  double solid_height = 0.0;
  std::optional<ReactionConstants> reaction;
  /// Exact solution at (x, y, t), when one is known.
  std::function<Primitive(double, double, double)> exact;

  PressureFunctional pressure_functional(double eps = kDefaultEps) const {
    return {gamma, reaction ? reaction->heat_release : 0.0, eps};
  }
};

/// Canonical problem names accepted by make_problem.
std::span<const std::string_view> problem_names() noexcept;

/// Builds one of the canonical experiments. Throws std::invalid_argument on
/// an unknown name.
ProblemSpec make_problem(std::string_view name);

/// Allocates a field for the spec, sets the initial condition on interior
/// and solid cells, and fills the halo.
template <std::size_t N> Field<N> make_field(const ProblemSpec& spec, const PressureFunctional& f);

/// Isentropic vortex advected by the unit mean flow on the periodic
/// [0, 10]^2 box, centred at (5 + t, 5 + t) modulo the box.
Primitive vortex_exact(double x, double y, double t, double vortex_strength, double gamma);

inline constexpr double kVortexStrength = 10.0828;

/// Post-shock state of a normal shock of the given Mach number running in
/// +x into the quiescent state `ahead` (Rankine-Hugoniot).
Primitive normal_shock_state(const Primitive& ahead, double mach, double gamma);

struct ErrorNorms {
  double l1 = 0.0;
  double linf = 0.0;
};

/// L1 is the mean absolute nodal error, Linf the maximum.
/// Throws std::invalid_argument on a size mismatch.
ErrorNorms error_norms(std::span<const double> numeric, std::span<const double> exact);

/// Density errors of a field against an exact solution at time t.
template <std::size_t N>
ErrorNorms density_error(const Field<N>& field,
                         const std::function<Primitive(double, double, double)>& exact, double t);

/// order_k = log(e_{k-1} / e_k) / log(n_k / n_{k-1}); nullopt where an error is zero.
std::vector<std::optional<double>> convergence_order(std::span<const double> errors,
                                                     std::span<const std::size_t> resolutions);

} // namespace possweep

#endif // POSSWEEP_PROBLEMS_HPP
