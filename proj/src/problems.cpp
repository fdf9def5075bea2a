#include "possweep/problems.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace possweep {

namespace {

constexpr std::array<std::string_view, 7> kNames = {
    "double_rarefaction", "sedov_1d",          "vortex",    "sedov_2d",
    "mach2000",           "shock_diffraction", "detonation"};

BoundarySpec uniform(BoundaryCondition bc) {
  BoundarySpec b;
  for (auto& s : b.sides) s = bc;
  return b;
}

// Primitive with pressure recovered from a total energy, for data given as
// (rho, u, v, E, Y).
Primitive from_energy(double rho, double u, double v, double E, double Y, double gamma, double Q) {
  const double p = (gamma - 1.0) * (E - 0.5 * rho * (u * u + v * v) - Q * rho * Y);
  return {rho, u, v, p, Y};
}

ProblemSpec double_rarefaction() {
  ProblemSpec s;
  s.name = "double_rarefaction";
  s.dims = 1;
  s.components = 3;
  s.x_min = -0.5;
  s.x_max = 0.5;
  s.nx = 200;
  s.gamma = 1.4;
  s.cfl = 0.9;
  s.final_time = 0.3;
  s.initial = [](const GridPoint& g) {
    return Primitive{7.0, g.x < 0.0 ? -1.0 : 1.0, 0.0, 0.2, 0.0};
  };
  s.boundary = uniform(BoundaryCondition::outflow());
  return s;
}

ProblemSpec sedov_1d() {
  ProblemSpec s;
  s.name = "sedov_1d";
  s.dims = 1;
  s.components = 3;
  s.x_min = -2.0;
  s.x_max = 2.0;
  s.nx = 800;
  s.gamma = 1.4;
  s.cfl = 1.2;
  s.final_time = 0.001;
  const double gamma = s.gamma;
  s.initial = [gamma](const GridPoint& g) {
    const double E = g.i == g.nx / 2 ? 3200000.0 / g.dx : 1e-12;
    return Primitive{1.0, 0.0, 0.0, (gamma - 1.0) * E, 0.0};
  };
  s.boundary = uniform(BoundaryCondition::outflow());
  return s;
}

ProblemSpec vortex() {
  ProblemSpec s;
  s.name = "vortex";
  s.dims = 2;
  s.components = 4;
  s.x_min = 0.0;
  s.x_max = 10.0;
  s.y_min = 0.0;
  s.y_max = 10.0;
  s.nx = 180;
  s.ny = 180;
  s.gamma = 1.4;
  s.cfl = 0.5;
  s.final_time = 0.01;
  const double gamma = s.gamma;
  s.exact = [gamma](double x, double y, double t) {
    return vortex_exact(x, y, t, kVortexStrength, gamma);
  };
  s.initial = [gamma](const GridPoint& g) {
    return vortex_exact(g.x, g.y, 0.0, kVortexStrength, gamma);
  };
  s.boundary = uniform(BoundaryCondition::periodic());
  return s;
}

ProblemSpec sedov_2d() {
  ProblemSpec s;
  s.name = "sedov_2d";
  s.dims = 2;
  s.components = 4;
  s.x_max = 1.3;
  s.y_max = 1.3;
  s.nx = 640;
  s.ny = 640;
  s.gamma = 1.4;
  s.cfl = 0.5;
  s.final_time = 1.0;
  const double gamma = s.gamma;
  s.initial = [gamma](const GridPoint& g) {
    const double E = g.i == 0 && g.j == 0 ? 0.244816 / (g.dx * g.dy) : 1e-12;
    return Primitive{1.0, 0.0, 0.0, (gamma - 1.0) * E, 0.0};
  };
  s.boundary[Side::Left] = BoundaryCondition::reflective();
  s.boundary[Side::Bottom] = BoundaryCondition::reflective();
  s.boundary[Side::Right] = BoundaryCondition::outflow();
  s.boundary[Side::Top] = BoundaryCondition::outflow();
  return s;
}

ProblemSpec mach2000() {
  ProblemSpec s;
  s.name = "mach2000";
  s.dims = 2;
  s.components = 4;
  s.x_max = 1.0;
  s.y_max = 0.25;
  s.nx = 800;
  s.ny = 400;
  s.gamma = 5.0 / 3.0;
  s.cfl = 0.25;
  s.final_time = 0.001;
  s.initial = [](const GridPoint&) { return Primitive{0.5, 0.0, 0.0, 0.4127, 0.0}; };
  // Bottom is the jet's symmetry plane; the jet occupies y <= 0.05 at x = 0.
  s.boundary[Side::Left] = BoundaryCondition::inflow_profile([](double y) {
    return Primitive{5.0, y <= 0.05 ? 800.0 : 0.0, 0.0, 0.4127, 0.0};
  });
  s.boundary[Side::Bottom] = BoundaryCondition::reflective();
  s.boundary[Side::Right] = BoundaryCondition::outflow();
  s.boundary[Side::Top] = BoundaryCondition::outflow();
  return s;
}

ProblemSpec shock_diffraction() {
  ProblemSpec s;
  s.name = "shock_diffraction";
  s.dims = 2;
  s.components = 4;
  s.x_max = 13.0;
  s.y_max = 11.0;
  s.nx = 1040;
  s.ny = 880;
  s.gamma = 1.4;
  s.cfl = 0.9;
  s.final_time = 2.3;
  s.solid_width = 1.0;
  s.solid_height = 6.0;
  const Primitive ambient{1.4, 0.0, 0.0, 1.0, 0.0};
  const Primitive shocked = normal_shock_state(ambient, 5.09, s.gamma);
  s.initial = [ambient, shocked](const GridPoint& g) {
    return g.x < 0.5 && g.y >= 6.0 ? shocked : ambient;
  };
  s.boundary[Side::Left] = BoundaryCondition::inflow_state(shocked);
  s.boundary[Side::Right] = BoundaryCondition::outflow();
  s.boundary[Side::Bottom] = BoundaryCondition::outflow();
  s.boundary[Side::Top] = BoundaryCondition::outflow();
  return s;
}

ProblemSpec detonation() {
  ProblemSpec s;
  s.name = "detonation";
  s.dims = 2;
  s.components = 5;
  s.x_max = 5.0;
  s.y_max = 5.0;
  s.nx = 400;
  s.ny = 400;
  s.gamma = 1.2;
  s.cfl = 0.89;
  s.final_time = 0.6;
  s.solid_width = 1.0;
  s.solid_height = 2.0;
  s.reaction = ReactionConstants{2566.4, 50.0, 50.0};
  const double Q = s.reaction->heat_release;
  const Primitive burnt = from_energy(11.0, 6.18, 0.0, 970.0, 1.0, s.gamma, Q);
  const Primitive fresh = from_energy(1.0, 0.0, 0.0, 55.0, 1.0, s.gamma, Q);
  s.initial = [burnt, fresh](const GridPoint& g) { return g.x < 0.5 ? burnt : fresh; };
  s.boundary = uniform(BoundaryCondition::reflective());
  s.boundary[Side::Left] = BoundaryCondition::inflow_state(burnt);
  return s;
}

} // namespace

std::span<const std::string_view> problem_names() noexcept { return kNames; }

ProblemSpec make_problem(std::string_view name) {
  if (name == "double_rarefaction") return double_rarefaction();
  if (name == "sedov_1d") return sedov_1d();
  if (name == "vortex") return vortex();
  if (name == "sedov_2d") return sedov_2d();
  if (name == "mach2000") return mach2000();
  if (name == "shock_diffraction") return shock_diffraction();
  if (name == "detonation") return detonation();
  throw std::invalid_argument("unknown problem '" + std::string(name) + "'");
}

template <std::size_t N> Field<N> make_field(const ProblemSpec& spec, const PressureFunctional& f) {
  if (spec.components != N) {
    throw std::invalid_argument("make_field: " + spec.name + " has " +
                                std::to_string(spec.components) + " components, not " +
                                std::to_string(N));
  }
  const std::size_t ny = Conserved<N>::kDims == 1 ? 1 : spec.ny;
  if (spec.nx < 5 || (Conserved<N>::kDims == 2 && ny < 5)) {
    throw std::invalid_argument("make_field: resolution below the stencil width");
  }
  const double dx = (spec.x_max - spec.x_min) / static_cast<double>(spec.nx);
  const double dy = Conserved<N>::kDims == 1 ? 1.0 : (spec.y_max - spec.y_min) / static_cast<double>(ny);
  Field<N> field(spec.nx, ny, spec.x_min, spec.y_min, dx, dy);
  field.boundary() = spec.boundary;
  if (spec.solid_width > 0.0 && spec.solid_height > 0.0) {
    field.solid() = SolidBlock{static_cast<std::size_t>(std::lround(spec.solid_width / dx)),
                               static_cast<std::size_t>(std::lround(spec.solid_height / dy))};
  }
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < spec.nx; ++i) {
      const long li = static_cast<long>(i), lj = static_cast<long>(j);
      GridPoint g{field.x(li), Conserved<N>::kDims == 1 ? 0.0 : field.y(lj), i, j, spec.nx, ny, dx, dy};
      field.set(li, lj, to_conserved<N>(spec.initial(g), f));
    }
  }
  apply_boundary(field, f);
  return field;
}

Primitive vortex_exact(double x, double y, double t, double vortex_strength, double gamma) {
  constexpr double L = 10.0;
  const auto wrap = [](double d) { return d - L * std::round(d / L); };
  const double xb = wrap(x - (5.0 + t));
  const double yb = wrap(y - (5.0 + t));
  const double r2 = xb * xb + yb * yb;
  const double pi = std::numbers::pi;
  const double a = vortex_strength / (2.0 * pi) * std::exp(0.5 * (1.0 - r2));
  const double dT = -(gamma - 1.0) * vortex_strength * vortex_strength /
                    (8.0 * pi * pi * gamma) * std::exp(1.0 - r2);
  const double T = 1.0 + dT;
  const double rho = std::pow(T, 1.0 / (gamma - 1.0));
  return {rho, 1.0 + a * yb, 1.0 - a * xb, rho * T, 0.0};
}

Primitive normal_shock_state(const Primitive& ahead, double mach, double gamma) {
  if (!(mach > 1.0)) throw std::invalid_argument("normal_shock_state: Mach number must exceed 1");
  const double m2 = mach * mach;
  const double c = std::sqrt(gamma * ahead.p / ahead.rho);
  const double rho = ahead.rho * (gamma + 1.0) * m2 / ((gamma - 1.0) * m2 + 2.0);
  const double p = ahead.p * (1.0 + 2.0 * gamma / (gamma + 1.0) * (m2 - 1.0));
  const double speed = mach * c + ahead.u;
  const double u = speed - (speed - ahead.u) * ahead.rho / rho;
  return {rho, u, ahead.v, p, ahead.Y};
}

ErrorNorms error_norms(std::span<const double> numeric, std::span<const double> exact) {
  if (numeric.size() != exact.size()) throw std::invalid_argument("error_norms: size mismatch");
  if (numeric.empty()) throw std::invalid_argument("error_norms: empty grid");
  ErrorNorms e;
  double sum = 0.0;
  for (std::size_t k = 0; k < numeric.size(); ++k) {
    const double d = std::abs(numeric[k] - exact[k]);
    sum += d;
    e.linf = std::max(e.linf, d);
  }
  e.l1 = sum / static_cast<double>(numeric.size());
  return e;
}

template <std::size_t N>
ErrorNorms density_error(const Field<N>& field,
                         const std::function<Primitive(double, double, double)>& exact, double t) {
  if (!exact) throw std::invalid_argument("density_error: problem has no exact solution");
  std::vector<double> numeric, reference;
  for (const auto& ij : field.fluid_indices()) {
    numeric.push_back(field.at(0, ij[0], ij[1]));
    const double y = Conserved<N>::kDims == 1 ? 0.0 : field.y(ij[1]);
    reference.push_back(exact(field.x(ij[0]), y, t).rho);
  }
  return error_norms(numeric, reference);
}

std::vector<std::optional<double>> convergence_order(std::span<const double> errors,
                                                     std::span<const std::size_t> resolutions) {
  if (errors.size() != resolutions.size()) {
    throw std::invalid_argument("convergence_order: errors and resolutions differ in length");
  }
  std::vector<std::optional<double>> orders;
  for (std::size_t k = 1; k < errors.size(); ++k) {
    if (resolutions[k] <= resolutions[k - 1]) {
      throw std::invalid_argument("convergence_order: resolutions must strictly increase");
    }
    if (errors[k] > 0.0 && errors[k - 1] > 0.0) {
      orders.emplace_back(std::log(errors[k - 1] / errors[k]) /
                          std::log(static_cast<double>(resolutions[k]) /
                                   static_cast<double>(resolutions[k - 1])));
    } else {
      orders.emplace_back(std::nullopt);
    }
  }
  return orders;
}

template Field<3> make_field<3>(const ProblemSpec&, const PressureFunctional&);
template Field<4> make_field<4>(const ProblemSpec&, const PressureFunctional&);
template Field<5> make_field<5>(const ProblemSpec&, const PressureFunctional&);
template ErrorNorms density_error<3>(const Field<3>&,
                                     const std::function<Primitive(double, double, double)>&, double);
template ErrorNorms density_error<4>(const Field<4>&,
                                     const std::function<Primitive(double, double, double)>&, double);
template ErrorNorms density_error<5>(const Field<5>&,
                                     const std::function<Primitive(double, double, double)>&, double);

} // namespace possweep
