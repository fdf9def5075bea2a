#include "possweep/eigensystem.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace possweep {

namespace {

// Flux along the first momentum component ("line frame").
template <std::size_t N>
Conserved<N> line_flux(const Conserved<N>& u, const PressureFunctional& f) {
  const double p = pressure_unchecked(u, f);
  const double vn = u[1] / u.rho();
  Conserved<N> F;
  F[0] = u[1];
  F[1] = u[1] * vn + p;
  if constexpr (N >= 4) F[2] = u[2] * vn;
  const std::size_t e = Conserved<N>::kEnergy;
  F[e] = (u[e] + p) * vn;
  if constexpr (N == 5) F[4] = u[4] * vn;
  return F;
}

struct RoeAverage {
  double u = 0.0, v = 0.0, H = 0.0, Y = 0.0, c = 0.0;
};

template <std::size_t N>
RoeAverage roe_average(const Conserved<N>& uL, const Conserved<N>& uR, const PressureFunctional& f) {
  if (!(uL.rho() > 0.0) || !(uR.rho() > 0.0)) {
    throw std::domain_error("roe_eigensystem: non-positive density");
  }
  const double wl = std::sqrt(uL.rho());
  const double wr = std::sqrt(uR.rho());
  const double inv = 1.0 / (wl + wr);
  const std::size_t e = Conserved<N>::kEnergy;
  const double HL = (uL[e] + pressure_unchecked(uL, f)) / uL.rho();
  const double HR = (uR[e] + pressure_unchecked(uR, f)) / uR.rho();

  RoeAverage a;
  // sqrt(rho) * (m / rho) == m / sqrt(rho)
  a.u = (uL[1] / wl + uR[1] / wr) * inv;
  if constexpr (N >= 4) a.v = (uL[2] / wl + uR[2] / wr) * inv;
  a.H = (wl * HL + wr * HR) * inv;
  if constexpr (N == 5) a.Y = (uL[4] / wl + uR[4] / wr) * inv;

  const double q2 = a.u * a.u + a.v * a.v;
  const double c2 = (f.gamma - 1.0) * (a.H - 0.5 * q2 - f.heat_release * a.Y);
  if (!(c2 > 0.0)) {
    throw std::domain_error("roe_eigensystem: averaged sound speed squared " + std::to_string(c2) +
                            " is not positive");
  }
  a.c = std::sqrt(c2);
  return a;
}

template <std::size_t N>
EigenSystem<N> line_eigensystem(const Conserved<N>& uL, const Conserved<N>& uR,
                                const PressureFunctional& f) {
  const RoeAverage a = roe_average(uL, uR, f);
  const double u = a.u, v = a.v, H = a.H, Y = a.Y, c = a.c;
  const double Q = N == 5 ? f.heat_release : 0.0;
  const double q2 = u * u + v * v;
  const double b1 = (f.gamma - 1.0) / (c * c);
  const double b2 = 0.5 * b1 * q2;

  EigenSystem<N> es;
  auto& R = es.right;
  auto& L = es.left;

  if constexpr (N == 3) {
    es.speeds = {u - c, u, u + c};
    R[0] = {1.0, 1.0, 1.0};
    R[1] = {u - c, u, u + c};
    R[2] = {H - u * c, 0.5 * q2, H + u * c};

    L[0] = {0.5 * (b2 + u / c), -0.5 * (b1 * u + 1.0 / c), 0.5 * b1};
    L[1] = {1.0 - b2, b1 * u, -b1};
    L[2] = {0.5 * (b2 - u / c), -0.5 * (b1 * u - 1.0 / c), 0.5 * b1};
  } else {
    // Waves: v-c | entropy | shear | (species) | v+c. The last wave index is N-1.
    constexpr std::size_t last = N - 1;
    es.speeds.fill(u);
    es.speeds[0] = u - c;
    es.speeds[last] = u + c;

    for (auto& row : R) row.fill(0.0);
    for (auto& row : L) row.fill(0.0);

    // Right eigenvectors, stored as columns.
    const std::size_t e = Conserved<N>::kEnergy;
    auto set_col = [&](std::size_t col, std::array<double, N> r) {
      for (std::size_t k = 0; k < N; ++k) R[k][col] = r[k];
    };
    std::array<double, N> r{};
    r[0] = 1.0; r[1] = u - c; r[2] = v; r[e] = H - u * c;
    if constexpr (N == 5) r[4] = Y;
    set_col(0, r);

    r = {};
    r[0] = 1.0; r[1] = u; r[2] = v; r[e] = 0.5 * q2 + Q * Y;
    if constexpr (N == 5) r[4] = Y;
    set_col(1, r);

    r = {};
    r[2] = 1.0; r[e] = v;
    set_col(2, r);

    if constexpr (N == 5) {
      r = {};
      r[e] = Q; r[4] = 1.0;
      set_col(3, r);
    }

    r = {};
    r[0] = 1.0; r[1] = u + c; r[2] = v; r[e] = H + u * c;
    if constexpr (N == 5) r[4] = Y;
    set_col(last, r);

    // Left eigenvectors (rows). b1 * (q2/2, -u, -v, 1, -Q) is dp / c^2.
    L[0][0] = 0.5 * (b2 + u / c);
    L[0][1] = -0.5 * (b1 * u + 1.0 / c);
    L[0][2] = -0.5 * b1 * v;
    L[0][e] = 0.5 * b1;

    L[1][0] = 1.0 - b2;
    L[1][1] = b1 * u;
    L[1][2] = b1 * v;
    L[1][e] = -b1;

    L[2][0] = -v;
    L[2][2] = 1.0;

    L[last][0] = 0.5 * (b2 - u / c);
    L[last][1] = -0.5 * (b1 * u - 1.0 / c);
    L[last][2] = -0.5 * b1 * v;
    L[last][e] = 0.5 * b1;

    if constexpr (N == 5) {
      L[0][4] = -0.5 * b1 * Q;
      L[1][4] = b1 * Q;
      L[3][0] = -Y;
      L[3][4] = 1.0;
      L[last][4] = -0.5 * b1 * Q;
    }
  }
  return es;
}

} // namespace

template <std::size_t N>
Conserved<N> physical_flux(const Conserved<N>& u, const PressureFunctional& f, int axis) {
  if (axis == 0) return line_flux(u, f);
  return swap_axes(line_flux(swap_axes(u), f));
}

template <std::size_t N>
EigenSystem<N> roe_eigensystem(const Conserved<N>& uL, const Conserved<N>& uR,
                               const PressureFunctional& f, int axis) {
  if (axis == 0) return line_eigensystem(uL, uR, f);
  // Solve in the rotated frame, then permute momentum rows of R and columns of L.
  EigenSystem<N> es = line_eigensystem(swap_axes(uL), swap_axes(uR), f);
  if constexpr (N >= 4) {
    std::swap(es.right[1], es.right[2]);
    for (auto& row : es.left) std::swap(row[1], row[2]);
  }
  return es;
}

template Conserved<3> physical_flux<3>(const Conserved<3>&, const PressureFunctional&, int);
template Conserved<4> physical_flux<4>(const Conserved<4>&, const PressureFunctional&, int);
template Conserved<5> physical_flux<5>(const Conserved<5>&, const PressureFunctional&, int);
template EigenSystem<3> roe_eigensystem<3>(const Conserved<3>&, const Conserved<3>&,
                                           const PressureFunctional&, int);
template EigenSystem<4> roe_eigensystem<4>(const Conserved<4>&, const Conserved<4>&,
                                           const PressureFunctional&, int);
template EigenSystem<5> roe_eigensystem<5>(const Conserved<5>&, const Conserved<5>&,
                                           const PressureFunctional&, int);

} // namespace possweep
