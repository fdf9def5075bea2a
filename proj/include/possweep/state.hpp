#ifndef POSSWEEP_STATE_HPP
#define POSSWEEP_STATE_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

namespace possweep {

/// Conserved variables at one node.
///
/// The component count selects the system:
///   N = 3  1D Euler        (rho, m, E)
///   N = 4  2D Euler        (rho, m, n, E)
///   N = 5  2D reactive     (rho, m, n, E, rhoY)
template <std::size_t N> struct Conserved {
  static_assert(N >= 3 && N <= 5, "supported systems have 3, 4 or 5 components");
  std::array<double, N> v{};

  static constexpr std::size_t size() noexcept { return N; }
  static constexpr std::size_t kDensity = 0;
  static constexpr std::size_t kMomentumX = 1;
  static constexpr std::size_t kMomentumY = 2; // only meaningful for N >= 4
  static constexpr std::size_t kEnergy = N == 3 ? 2 : 3;
  static constexpr std::size_t kSpecies = 4; // only meaningful for N == 5
  static constexpr int kDims = N == 3 ? 1 : 2;

  constexpr double& operator[](std::size_t i) noexcept { return v[i]; }
  constexpr double operator[](std::size_t i) const noexcept { return v[i]; }

  constexpr double rho() const noexcept { return v[kDensity]; }
  constexpr double energy() const noexcept { return v[kEnergy]; }

  constexpr Conserved& operator+=(const Conserved& o) noexcept {
    for (std::size_t i = 0; i < N; ++i) v[i] += o.v[i];
    return *this;
  }
  constexpr Conserved& operator-=(const Conserved& o) noexcept {
    for (std::size_t i = 0; i < N; ++i) v[i] -= o.v[i];
    return *this;
  }
  constexpr Conserved& operator*=(double s) noexcept {
    for (auto& x : v) x *= s;
    return *this;
  }
  friend constexpr Conserved operator+(Conserved a, const Conserved& b) noexcept { return a += b; }
  friend constexpr Conserved operator-(Conserved a, const Conserved& b) noexcept { return a -= b; }
  friend constexpr Conserved operator*(double s, Conserved a) noexcept { return a *= s; }
  friend constexpr bool operator==(const Conserved&, const Conserved&) = default;
};

using State1D = Conserved<3>;
using State2D = Conserved<4>;
using ReactiveState = Conserved<5>;

/// Positivity threshold used throughout unless a run overrides it.
inline constexpr double kDefaultEps = 1e-13;

/// Concave pressure map p(u) for an ideal (optionally reacting) gas.
///
/// heat_release enters only for the 5-component reactive system, where the
/// chemical energy rho*Q*Y is removed from E before taking the thermal part.
struct PressureFunctional {
  double gamma = 1.4;
  double heat_release = 0.0;
  double eps = kDefaultEps;
};

/// Primitive description used to set up initial and inflow data.
struct Primitive {
  double rho = 1.0;
  double u = 0.0;
  double v = 0.0;
  double p = 1.0;
  double Y = 0.0;
};

namespace detail {
template <std::size_t N> constexpr double momentum_squared(const Conserved<N>& u) noexcept {
  if constexpr (N == 3) {
    return u[1] * u[1];
  } else {
    return u[1] * u[1] + u[2] * u[2];
  }
}
} // namespace detail

/// Pressure without the density guard; used on hot paths after positivity is known.
template <std::size_t N>
constexpr double pressure_unchecked(const Conserved<N>& u, const PressureFunctional& f) noexcept {
  double internal = u.energy() - 0.5 * detail::momentum_squared(u) / u.rho();
  if constexpr (N == 5) internal -= f.heat_release * u[Conserved<N>::kSpecies];
  return (f.gamma - 1.0) * internal;
}

/// Throws std::domain_error when rho <= 0; the density sweep has to run first.
template <std::size_t N> double pressure(const Conserved<N>& u, const PressureFunctional& f) {
  if (!(u.rho() > 0.0)) {
    throw std::domain_error("pressure: non-positive density " + std::to_string(u.rho()));
  }
  return pressure_unchecked(u, f);
}

template <std::size_t N>
constexpr bool is_admissible(const Conserved<N>& u, const PressureFunctional& f) noexcept {
  if (!(u.rho() > f.eps)) return false;
  return pressure_unchecked(u, f) > f.eps;
}

/// Componentwise arithmetic mean, summed left to right.
template <std::size_t N> Conserved<N> mean_state(std::span<const Conserved<N>> states) {
  if (states.empty()) throw std::domain_error("mean_state: empty sequence");
  Conserved<N> sum{};
  for (const auto& s : states) sum += s;
  return (1.0 / static_cast<double>(states.size())) * sum;
}

/// Euclidean norm over every conserved component.
template <std::size_t N> double state_norm(const Conserved<N>& u) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += u[i] * u[i];
  return std::sqrt(s);
}

template <std::size_t N>
Conserved<N> to_conserved(const Primitive& w, const PressureFunctional& f) noexcept {
  Conserved<N> u;
  u[0] = w.rho;
  u[1] = w.rho * w.u;
  double kinetic = w.u * w.u;
  if constexpr (N >= 4) {
    u[2] = w.rho * w.v;
    kinetic += w.v * w.v;
  }
  double E = 0.5 * w.rho * kinetic + w.p / (f.gamma - 1.0);
  if constexpr (N == 5) {
    u[4] = w.rho * w.Y;
    E += w.rho * f.heat_release * w.Y;
  }
  u[Conserved<N>::kEnergy] = E;
  return u;
}

template <std::size_t N>
Primitive to_primitive(const Conserved<N>& u, const PressureFunctional& f) {
  Primitive w;
  w.rho = u.rho();
  w.p = pressure(u, f);
  w.u = u[1] / w.rho;
  if constexpr (N >= 4) w.v = u[2] / w.rho;
  if constexpr (N == 5) w.Y = u[4] / w.rho;
  return w;
}

template <std::size_t N>
double sound_speed(const Conserved<N>& u, const PressureFunctional& f) {
  return std::sqrt(f.gamma * pressure(u, f) / u.rho());
}

template <std::size_t N> bool is_finite(const Conserved<N>& u) noexcept {
  for (double x : u.v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

} // namespace possweep

#endif // POSSWEEP_STATE_HPP
