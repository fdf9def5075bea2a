#include "possweep/kernels/kernels.hpp"
#include "possweep/kernels/weno5_scalar.hpp"

namespace possweep::kernels::scalar {

void weno5_batch(const StencilRows& rows, double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = weno5(rows[0][k], rows[1][k], rows[2][k], rows[3][k], rows[4][k]);
  }
}

void stage_combine(double* out, const double* base, const double* u, const double* rhs, double a,
                   double b, double dt, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = a * base[k] + b * (u[k] + dt * rhs[k]);
  }
}

} // namespace possweep::kernels::scalar
