#include "possweep/weno.hpp"

#include "possweep/kernels/kernels.hpp"
#include "possweep/kernels/weno5_scalar.hpp"
#include "possweep/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace possweep {

double weno5_reconstruct(std::span<const double, 5> s) noexcept {
  return kernels::weno5(s[0], s[1], s[2], s[3], s[4]);
}

namespace {

template <std::size_t N>
void accumulate_speed(const Conserved<N>& u, const PressureFunctional& f, long i, long j,
                      std::array<double, 2>& alpha) {
  const double rho = u.rho();
  const double p = is_finite(u) && rho > 0.0 ? pressure_unchecked(u, f) : -1.0;
  if (!(p >= 0.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "global_alpha: no real sound speed at (" << i << ", " << j << "): rho = " << rho
       << ", p = " << p;
    throw std::domain_error(os.str());
  }
  const double c = std::sqrt(f.gamma * p / rho);
  alpha[0] = std::max(alpha[0], std::abs(u[1] / rho) + c);
  if constexpr (N >= 4) alpha[1] = std::max(alpha[1], std::abs(u[2] / rho) + c);
}

/// First fluid index along a grid line that starts at the solid block.
template <std::size_t N> long x_begin(const Field<N>& field, long j) {
  const SolidBlock& s = field.solid();
  return (!s.empty() && j < static_cast<long>(s.nj)) ? static_cast<long>(s.ni) : 0;
}
template <std::size_t N> long y_begin(const Field<N>& field, long i) {
  const SolidBlock& s = field.solid();
  return (!s.empty() && i < static_cast<long>(s.ni)) ? static_cast<long>(s.nj) : 0;
}

template <std::size_t N> struct LineWorkspace {
  std::vector<Conserved<N>> plus, minus, flux;
  std::vector<EigenSystem<N>> eig;
  std::vector<double> rows;  // [side][component][stencil point][interface]
  std::vector<double> recon; // [side][component][interface]

  void resize(std::size_t n) {
    const std::size_t faces = n + 1;
    plus.resize(n + 6);
    minus.resize(n + 6);
    flux.resize(faces);
    eig.resize(faces);
    rows.resize(2 * N * 5 * faces);
    recon.resize(2 * N * faces);
  }
};

template <std::size_t N> LineWorkspace<N>& workspace() {
  thread_local LineWorkspace<N> ws;
  return ws;
}

} // namespace

template <std::size_t N>
std::array<double, 2> global_alpha(const Field<N>& field, const PressureFunctional& f) {
  std::array<double, 2> alpha{0.0, 0.0};
  const long nx = static_cast<long>(field.nx());
  const long ny = static_cast<long>(field.ny());
  constexpr long g = Field<N>::kGhost;

  for (long j = 0; j < ny; ++j) {
    const long ib = x_begin(field, j);
    for (long i = ib == 0 ? -g : ib; i < nx + g; ++i) {
      accumulate_speed(field.state(i, j), f, i, j, alpha);
    }
  }
  if constexpr (Field<N>::kDims == 2) {
    for (long i = 0; i < nx; ++i) {
      const long jb = y_begin(field, i);
      if (jb == 0) {
        for (long j = -g; j < 0; ++j) accumulate_speed(field.state(i, j), f, i, j, alpha);
      }
      for (long j = ny; j < ny + g; ++j) accumulate_speed(field.state(i, j), f, i, j, alpha);
    }
  }
  return alpha;
}

template <std::size_t N>
void line_residual(std::span<const Conserved<N>> line, double alpha, double spacing,
                   const PressureFunctional& f, const DiscretizationOptions& opts,
                   std::span<Conserved<N>> out) {
  const std::size_t n = out.size();
  if (line.size() != n + 6) throw std::invalid_argument("line_residual: line must hold n + 6 states");
  const std::size_t faces = n + 1;
  LineWorkspace<N>& ws = workspace<N>();
  ws.resize(n);

  for (std::size_t k = 0; k < n + 6; ++k) {
    const SplitFlux<N> s = flux_split(line[k], physical_flux(line[k], f, 0), alpha);
    ws.plus[k] = s.plus;
    ws.minus[k] = s.minus;
  }

  auto row = [&](std::size_t side, std::size_t c, std::size_t s) {
    return ws.rows.data() + ((side * N + c) * 5 + s) * faces;
  };
  auto rec = [&](std::size_t side, std::size_t c) { return ws.recon.data() + (side * N + c) * faces; };

  // Face q lies between line[q + 2] and line[q + 3]. The right-going part
  // uses points q .. q + 4, the left-going part points q + 5 .. q + 1.
  for (std::size_t q = 0; q < faces; ++q) {
    if (opts.characteristic) {
      ws.eig[q] = roe_eigensystem(line[q + 2], line[q + 3], f, 0);
      const Matrix<N>& L = ws.eig[q].left;
      for (std::size_t s = 0; s < 5; ++s) {
        const auto fp = mat_vec(L, ws.plus[q + s].v);
        const auto fm = mat_vec(L, ws.minus[q + 5 - s].v);
        for (std::size_t c = 0; c < N; ++c) {
          row(0, c, s)[q] = fp[c];
          row(1, c, s)[q] = fm[c];
        }
      }
    } else {
      for (std::size_t s = 0; s < 5; ++s) {
        for (std::size_t c = 0; c < N; ++c) {
          row(0, c, s)[q] = ws.plus[q + s][c];
          row(1, c, s)[q] = ws.minus[q + 5 - s][c];
        }
      }
    }
  }

  const kernels::KernelTable& kt = kernels::active();
  for (std::size_t side = 0; side < 2; ++side) {
    for (std::size_t c = 0; c < N; ++c) {
      const kernels::StencilRows rows{row(side, c, 0), row(side, c, 1), row(side, c, 2),
                                      row(side, c, 3), row(side, c, 4)};
      kt.weno5_batch(rows, rec(side, c), faces);
    }
  }

  for (std::size_t q = 0; q < faces; ++q) {
    std::array<double, N> diff{};
    for (std::size_t c = 0; c < N; ++c) diff[c] = rec(0, c)[q] - rec(1, c)[q];
    const std::array<double, N> phys = opts.characteristic ? mat_vec(ws.eig[q].right, diff) : diff;
    for (std::size_t c = 0; c < N; ++c) ws.flux[q][c] = alpha * phys[c];
  }

  const double inv = 1.0 / spacing;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < N; ++c) out[i][c] = -(ws.flux[i + 1][c] - ws.flux[i][c]) * inv;
  }
}

template <std::size_t N>
ResidualOutput<N> compute_residual(const Field<N>& field, const PressureFunctional& f,
                                   const DiscretizationOptions& opts) {
  ResidualOutput<N> out;
  out.alpha = global_alpha(field, f);
  out.residual.assign(field.data().size(), 0.0);
  const std::size_t plane = field.plane_size();
  const long nx = static_cast<long>(field.nx());
  const long ny = static_cast<long>(field.ny());
  constexpr long g = Field<N>::kGhost;

  if (!(out.alpha[0] > 0.0)) throw std::domain_error("compute_residual: alpha must be positive");

  // x sweeps, one row at a time.
  parallel_for(static_cast<std::size_t>(ny), [&](std::size_t jb, std::size_t je) {
    std::vector<Conserved<N>> line, res;
    for (long j = static_cast<long>(jb); j < static_cast<long>(je); ++j) {
      const long ib = x_begin(field, j);
      const long n = nx - ib;
      if (n <= 0) continue;
      line.resize(static_cast<std::size_t>(n + 2 * g));
      res.resize(static_cast<std::size_t>(n));
      for (long k = 0; k < n + 2 * g; ++k) {
        const long i = ib - g + k;
        if (i < ib && ib > 0) {
          Conserved<N> m = field.state(2 * ib - 1 - i, j);
          m[1] = -m[1];
          line[static_cast<std::size_t>(k)] = m;
        } else {
          line[static_cast<std::size_t>(k)] = field.state(i, j);
        }
      }
      line_residual<N>(line, out.alpha[0], field.dx(), f, opts, res);
      for (long i = ib; i < nx; ++i) {
        const std::size_t o = field.offset(i, j);
        for (std::size_t c = 0; c < N; ++c) {
          out.residual[c * plane + o] += res[static_cast<std::size_t>(i - ib)][c];
        }
      }
    }
  });

  if constexpr (Field<N>::kDims == 2) {
    if (!(out.alpha[1] > 0.0)) throw std::domain_error("compute_residual: alpha must be positive");
    parallel_for(static_cast<std::size_t>(nx), [&](std::size_t ib0, std::size_t ie0) {
      std::vector<Conserved<N>> line, res;
      for (long i = static_cast<long>(ib0); i < static_cast<long>(ie0); ++i) {
        const long jb = y_begin(field, i);
        const long n = ny - jb;
        if (n <= 0) continue;
        line.resize(static_cast<std::size_t>(n + 2 * g));
        res.resize(static_cast<std::size_t>(n));
        for (long k = 0; k < n + 2 * g; ++k) {
          const long j = jb - g + k;
          Conserved<N> u;
          if (j < jb && jb > 0) {
            u = field.state(i, 2 * jb - 1 - j);
            u[2] = -u[2];
          } else {
            u = field.state(i, j);
          }
          line[static_cast<std::size_t>(k)] = swap_axes(u);
        }
        line_residual<N>(line, out.alpha[1], field.dy(), f, opts, res);
        for (long j = jb; j < ny; ++j) {
          const std::size_t o = field.offset(i, j);
          const Conserved<N> r = swap_axes(res[static_cast<std::size_t>(j - jb)]);
          for (std::size_t c = 0; c < N; ++c) out.residual[c * plane + o] += r[c];
        }
      }
    });
  }
  return out;
}

Conserved<5> reactive_source(const Conserved<5>& w, const PressureFunctional& f, double K,
                             double Ea) {
  Conserved<5> s{};
  const double rhoY = w[Conserved<5>::kSpecies];
  if (rhoY == 0.0) return s;
  const double temperature = pressure(w, f) / w.rho();
  s[Conserved<5>::kSpecies] = -K * rhoY * std::exp(-Ea / temperature);
  return s;
}

#define POSSWEEP_INSTANTIATE_WENO(N)                                                            \
  template std::array<double, 2> global_alpha<N>(const Field<N>&, const PressureFunctional&);  \
  template void line_residual<N>(std::span<const Conserved<N>>, double, double,                \
                                 const PressureFunctional&, const DiscretizationOptions&,       \
                                 std::span<Conserved<N>>);                                      \
  template ResidualOutput<N> compute_residual<N>(const Field<N>&, const PressureFunctional&,   \
                                                 const DiscretizationOptions&);

POSSWEEP_INSTANTIATE_WENO(3)
POSSWEEP_INSTANTIATE_WENO(4)
POSSWEEP_INSTANTIATE_WENO(5)

#undef POSSWEEP_INSTANTIATE_WENO

} // namespace possweep
