#include "possweep/field.hpp"

#include <stdexcept>

namespace possweep {

template <std::size_t N>
Field<N>::Field(std::size_t nx, std::size_t ny, double x0, double y0, double dx, double dy)
    : nx_(nx), ny_(kDims == 1 ? 1 : ny), x0_(x0), y0_(y0), dx_(dx), dy_(dy) {
  if (nx_ == 0 || ny_ == 0) throw std::invalid_argument("Field: empty grid");
  if (!(dx > 0.0) || (kDims == 2 && !(dy > 0.0))) {
    throw std::invalid_argument("Field: spacings must be positive");
  }
  sx_ = nx_ + 2 * kGhost;
  sy_ = kDims == 2 ? ny_ + 2 * kGhost : 1;
  data_.assign(N * sx_ * sy_, 0.0);
}

template <std::size_t N> std::vector<Conserved<N>> Field<N>::fluid_states() const {
  std::vector<Conserved<N>> out;
  out.reserve(fluid_count());
  for (long j = 0; j < static_cast<long>(ny_); ++j) {
    for (long i = 0; i < static_cast<long>(nx_); ++i) {
      if (!is_solid(i, j)) out.push_back(state(i, j));
    }
  }
  return out;
}

template <std::size_t N> std::vector<std::array<long, 2>> Field<N>::fluid_indices() const {
  std::vector<std::array<long, 2>> out;
  out.reserve(fluid_count());
  for (long j = 0; j < static_cast<long>(ny_); ++j) {
    for (long i = 0; i < static_cast<long>(nx_); ++i) {
      if (!is_solid(i, j)) out.push_back({i, j});
    }
  }
  return out;
}

template <std::size_t N> std::array<double, N> Field<N>::totals() const {
  std::array<double, N> sum{};
  const double volume = kDims == 2 ? dx_ * dy_ : dx_;
  for (long j = 0; j < static_cast<long>(ny_); ++j) {
    for (long i = 0; i < static_cast<long>(nx_); ++i) {
      if (is_solid(i, j)) continue;
      for (std::size_t c = 0; c < N; ++c) sum[c] += at(c, i, j);
    }
  }
  for (auto& s : sum) s *= volume;
  return sum;
}

namespace {

// Fills the three ghost cells beyond one end of a grid line. `interior(k)`
// returns the k-th interior state counted from that end (k = 0 touches the
// face) and `periodic(k)` the k-th state counted from the opposite end.
template <std::size_t N, class Interior, class Periodic, class Store>
void fill_line_end(const BoundaryCondition& bc, int axis, double tangential,
                   const PressureFunctional& f, Interior interior, Periodic periodic, Store store) {
  for (long k = 0; k < Field<N>::kGhost; ++k) {
    Conserved<N> g;
    switch (bc.kind) {
    case BoundaryKind::Periodic: g = periodic(k); break;
    case BoundaryKind::Outflow: g = interior(0); break;
    case BoundaryKind::Reflective:
      g = interior(k);
      g[normal_momentum(axis)] = -g[normal_momentum(axis)];
      break;
    case BoundaryKind::Inflow: g = to_conserved<N>(bc.inflow(tangential), f); break;
    }
    store(k, g);
  }
}

} // namespace

template <std::size_t N> void apply_boundary(Field<N>& field, const PressureFunctional& f) {
  const long nx = static_cast<long>(field.nx());
  const long ny = static_cast<long>(field.ny());
  const BoundarySpec& bs = field.boundary();

  for (long j = 0; j < ny; ++j) {
    const double yj = Field<N>::kDims == 2 ? field.y(j) : 0.0;
    fill_line_end<N>(
        bs[Side::Left], 0, yj, f, [&](long k) { return field.state(k, j); },
        [&](long k) { return field.state(nx - 1 - k, j); },
        [&](long k, const Conserved<N>& g) { field.set(-1 - k, j, g); });
    fill_line_end<N>(
        bs[Side::Right], 0, yj, f, [&](long k) { return field.state(nx - 1 - k, j); },
        [&](long k) { return field.state(k, j); },
        [&](long k, const Conserved<N>& g) { field.set(nx + k, j, g); });
  }

  if constexpr (Field<N>::kDims == 2) {
    for (long i = 0; i < nx; ++i) {
      const double xi = field.x(i);
      fill_line_end<N>(
          bs[Side::Bottom], 1, xi, f, [&](long k) { return field.state(i, k); },
          [&](long k) { return field.state(i, ny - 1 - k); },
          [&](long k, const Conserved<N>& g) { field.set(i, -1 - k, g); });
      fill_line_end<N>(
          bs[Side::Top], 1, xi, f, [&](long k) { return field.state(i, ny - 1 - k); },
          [&](long k) { return field.state(i, k); },
          [&](long k, const Conserved<N>& g) { field.set(i, ny + k, g); });
    }
  }
}

template class Field<3>;
template class Field<4>;
template class Field<5>;
template void apply_boundary<3>(Field<3>&, const PressureFunctional&);
template void apply_boundary<4>(Field<4>&, const PressureFunctional&);
template void apply_boundary<5>(Field<5>&, const PressureFunctional&);

} // namespace possweep
