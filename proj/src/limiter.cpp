#include "possweep/limiter.hpp"

#include <algorithm>
#include <numeric>

namespace possweep {

namespace {

template <std::size_t N> bool needs_sweep(const Conserved<N>& u, const PressureFunctional& f) {
  if (!(u.rho() >= f.eps)) return true;
  return !(pressure_unchecked(u, f) >= f.eps);
}

} // namespace

template <std::size_t N> bool sweep_free(const Field<N>& field, const PressureFunctional& f) {
  const long nx = static_cast<long>(field.nx());
  const long ny = static_cast<long>(field.ny());
  for (long j = 0; j < ny; ++j) {
    for (long i = 0; i < nx; ++i) {
      if (!field.is_solid(i, j) && needs_sweep(field.state(i, j), f)) return false;
    }
  }
  return true;
}

template <std::size_t N>
std::vector<std::vector<std::size_t>> sweep_orderings(const Field<N>& field) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t count = field.fluid_count();
  if constexpr (Field<N>::kDims == 1) {
    out.emplace_back(count);
    std::iota(out.back().begin(), out.back().end(), std::size_t{0});
  } else {
    // Canonical position of each fluid cell (j-major), or npos for solid.
    const std::size_t nx = field.nx(), ny = field.ny();
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<std::size_t> position(nx * ny, npos);
    std::size_t next = 0;
    for (std::size_t j = 0; j < ny; ++j) {
      for (std::size_t i = 0; i < nx; ++i) {
        if (!field.is_solid(static_cast<long>(i), static_cast<long>(j))) position[j * nx + i] = next++;
      }
    }
    for (SnakeVariant v : {SnakeVariant::SweepI, SnakeVariant::SweepII}) {
      std::vector<std::size_t> order;
      order.reserve(count);
      for (const GridIndex& g : snake_order(nx, ny, v)) {
        const std::size_t p = position[g.j * nx + g.i];
        if (p != npos) order.push_back(p);
      }
      out.push_back(std::move(order));
    }
  }
  return out;
}

template <std::size_t N>
LimiterReport apply_limiter(Field<N>& field, const PressureFunctional& f,
                            const LimiterOptions& opts, SweepStats& stats) {
  LimiterReport report;
  stats.pressure_sweeps_this_call = 0;
  if (sweep_free(field, f)) return report;
  report.triggered = true;

  std::vector<Conserved<N>> states = field.fluid_states();
  const auto orderings = sweep_orderings(field);

  // Density along the first ordering.
  const std::vector<std::size_t>& first = orderings.front();
  std::vector<double> rho(first.size());
  for (std::size_t k = 0; k < first.size(); ++k) rho[k] = states[first[k]].rho();
  report.density_modified = density_sweep(rho, f.eps);
  if (report.density_modified > 0) {
    for (std::size_t k = 0; k < first.size(); ++k) states[first[k]][0] = rho[k];
    ++stats.density_sweeps_total;
  }

  report.pressure = pressure_sweep<N>(states, f, opts.max_full_sweeps, orderings);

  const auto idx = field.fluid_indices();
  for (std::size_t k = 0; k < states.size(); ++k) field.set(idx[k][0], idx[k][1], states[k]);

  const std::size_t sweeps = report.pressure.full_sweeps;
  stats.pressure_sweeps_this_call = sweeps;
  stats.positive_branch_adjustments += report.pressure.positive_branch;
  stats.negative_branch_adjustments += report.pressure.negative_branch;
  stats.coincident_skips += report.pressure.coincident;
  if (sweeps > 0) {
    stats.pressure_sweeps_total += sweeps;
    stats.pressure_sweeps_max_per_stage = std::max(stats.pressure_sweeps_max_per_stage, sweeps);
    ++stats.stages_with_sweeps;
  }
  return report;
}

#define POSSWEEP_INSTANTIATE_LIMITER(N)                                                        \
  template bool sweep_free<N>(const Field<N>&, const PressureFunctional&);                    \
  template std::vector<std::vector<std::size_t>> sweep_orderings<N>(const Field<N>&);         \
  template LimiterReport apply_limiter<N>(Field<N>&, const PressureFunctional&,               \
                                          const LimiterOptions&, SweepStats&);

POSSWEEP_INSTANTIATE_LIMITER(3)
POSSWEEP_INSTANTIATE_LIMITER(4)
POSSWEEP_INSTANTIATE_LIMITER(5)

#undef POSSWEEP_INSTANTIATE_LIMITER

} // namespace possweep
