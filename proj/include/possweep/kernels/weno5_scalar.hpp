#ifndef POSSWEEP_KERNELS_WENO5_SCALAR_HPP
#define POSSWEEP_KERNELS_WENO5_SCALAR_HPP

#include <array>

namespace possweep::kernels {

// Classical WENO5 constants. The vector kernels use the same literals.
inline constexpr double kWenoEps = 1e-6;
inline constexpr double kD0 = 0.1;
inline constexpr double kD1 = 0.6;
inline constexpr double kD2 = 0.3;
inline constexpr double kThirteenTwelfths = 13.0 / 12.0;

/// Candidate values of the three third-order stencils at the right face of c.
inline std::array<double, 3> weno5_candidates(double a, double b, double c, double d,
                                              double e) noexcept {
  return {(2.0 * a - 7.0 * b + 11.0 * c) / 6.0, (-b + 5.0 * c + 2.0 * d) / 6.0,
          (2.0 * c + 5.0 * d - e) / 6.0};
}

inline std::array<double, 3> weno5_smoothness(double a, double b, double c, double d,
                                              double e) noexcept {
  const double s0 = a - 2.0 * b + c;
  const double r0 = a - 4.0 * b + 3.0 * c;
  const double s1 = b - 2.0 * c + d;
  const double r1 = b - d;
  const double s2 = c - 2.0 * d + e;
  const double r2 = 3.0 * c - 4.0 * d + e;
  return {kThirteenTwelfths * (s0 * s0) + 0.25 * (r0 * r0),
          kThirteenTwelfths * (s1 * s1) + 0.25 * (r1 * r1),
          kThirteenTwelfths * (s2 * s2) + 0.25 * (r2 * r2)};
}

/// Unnormalised nonlinear weights d_k / (eps + beta_k)^2.
inline std::array<double, 3> weno5_alphas(double a, double b, double c, double d,
                                          double e) noexcept {
  const auto beta = weno5_smoothness(a, b, c, d, e);
  const double g0 = kWenoEps + beta[0];
  const double g1 = kWenoEps + beta[1];
  const double g2 = kWenoEps + beta[2];
  return {kD0 / (g0 * g0), kD1 / (g1 * g1), kD2 / (g2 * g2)};
}

inline std::array<double, 3> weno5_weights(double a, double b, double c, double d,
                                           double e) noexcept {
  const auto al = weno5_alphas(a, b, c, d, e);
  const double sum = al[0] + al[1] + al[2];
  return {al[0] / sum, al[1] / sum, al[2] / sum};
}

/// Fifth-order WENO value at the right face of the centre point c of the
/// stencil (a, b, c, d, e). Written as the dominant candidate plus weighted
/// corrections: equal candidates (constant or linear data) come out exactly,
/// and a huge candidate with negligible weight cannot cancel against the base.
inline double weno5(double a, double b, double c, double d, double e) noexcept {
  const auto q = weno5_candidates(a, b, c, d, e);
  const auto al = weno5_alphas(a, b, c, d, e);
  const double sum = al[0] + al[1] + al[2];
  const bool m1 = al[1] > al[0];
  const bool m2 = al[2] > (m1 ? al[1] : al[0]);
  const int base = m2 ? 2 : (m1 ? 1 : 0);
  const int i = (m1 || m2) ? 0 : 1;
  const int j = m2 ? 1 : 2;
  return q[base] + (al[i] * (q[i] - q[base]) + al[j] * (q[j] - q[base])) / sum;
}

} // namespace possweep::kernels

#endif // POSSWEEP_KERNELS_WENO5_SCALAR_HPP
