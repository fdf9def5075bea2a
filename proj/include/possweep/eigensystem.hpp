#ifndef POSSWEEP_EIGENSYSTEM_HPP
#define POSSWEEP_EIGENSYSTEM_HPP

#include "possweep/state.hpp"

#include <array>
#include <cstddef>

namespace possweep {

template <std::size_t N> using Matrix = std::array<std::array<double, N>, N>;

/// Roe-averaged characteristic decomposition A = R diag(speeds) L.
///
/// Columns of `right` (rows of `left`) are ordered by wave speed:
/// v-c, the linearly degenerate waves (entropy, shear, species), v+c.
template <std::size_t N> struct EigenSystem {
  Matrix<N> left{};
  Matrix<N> right{};
  std::array<double, N> speeds{};
};

/// Physical flux along `axis` (0 = x, 1 = y; 1D systems only have axis 0).
template <std::size_t N>
Conserved<N> physical_flux(const Conserved<N>& u, const PressureFunctional& f, int axis = 0);

/// Roe eigensystem between uL and uR for the flux along `axis`.
/// Throws std::domain_error if the averaged sound speed squared is not positive.
template <std::size_t N>
EigenSystem<N> roe_eigensystem(const Conserved<N>& uL, const Conserved<N>& uR,
                               const PressureFunctional& f, int axis = 0);

/// Swaps the x and y momentum components (identity for 1D states).
template <std::size_t N> constexpr Conserved<N> swap_axes(Conserved<N> u) noexcept {
  if constexpr (N >= 4) {
    const double m = u[1];
    u[1] = u[2];
    u[2] = m;
  }
  return u;
}

template <std::size_t N>
constexpr std::array<double, N> mat_vec(const Matrix<N>& a, const std::array<double, N>& x) noexcept {
  std::array<double, N> y{};
  for (std::size_t r = 0; r < N; ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < N; ++c) s += a[r][c] * x[c];
    y[r] = s;
  }
  return y;
}

template <std::size_t N> constexpr Matrix<N> mat_mul(const Matrix<N>& a, const Matrix<N>& b) noexcept {
  Matrix<N> out{};
  for (std::size_t r = 0; r < N; ++r) {
    for (std::size_t c = 0; c < N; ++c) {
      double s = 0.0;
      for (std::size_t k = 0; k < N; ++k) s += a[r][k] * b[k][c];
      out[r][c] = s;
    }
  }
  return out;
}

} // namespace possweep

#endif // POSSWEEP_EIGENSYSTEM_HPP
