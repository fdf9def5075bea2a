#ifndef POSSWEEP_FIELD_HPP
#define POSSWEEP_FIELD_HPP

#include "possweep/state.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace possweep {

enum class BoundaryKind { Periodic, Outflow, Reflective, Inflow };

/// Boundary treatment for one side of the domain. Inflow states may vary
/// along the side; `inflow` receives the coordinate tangential to the side.
struct BoundaryCondition {
  BoundaryKind kind = BoundaryKind::Outflow;
  std::function<Primitive(double)> inflow;

  static BoundaryCondition periodic() { return {BoundaryKind::Periodic, {}}; }
  static BoundaryCondition outflow() { return {BoundaryKind::Outflow, {}}; }
  static BoundaryCondition reflective() { return {BoundaryKind::Reflective, {}}; }
  static BoundaryCondition inflow_state(Primitive w) {
    return {BoundaryKind::Inflow, [w](double) { return w; }};
  }
  static BoundaryCondition inflow_profile(std::function<Primitive(double)> profile) {
    return {BoundaryKind::Inflow, std::move(profile)};
  }
};

enum class Side : std::size_t { Left = 0, Right = 1, Bottom = 2, Top = 3 };

struct BoundarySpec {
  std::array<BoundaryCondition, 4> sides{};

  BoundaryCondition& operator[](Side s) { return sides[static_cast<std::size_t>(s)]; }
  const BoundaryCondition& operator[](Side s) const { return sides[static_cast<std::size_t>(s)]; }
};

/// Solid obstacle occupying the lower-left block of cells [0, ni) x [0, nj).
/// Its exposed faces (i = ni and j = nj) are reflective walls.
struct SolidBlock {
  std::size_t ni = 0;
  std::size_t nj = 0;
  bool empty() const noexcept { return ni == 0 || nj == 0; }
  bool contains(long i, long j) const noexcept {
    return !empty() && i >= 0 && j >= 0 && i < static_cast<long>(ni) && j < static_cast<long>(nj);
  }
};

/// Node-centred structured grid with a three-cell ghost halo.
///
/// Interior node (i, j) sits at (x0 + (i + 1/2) dx, y0 + (j + 1/2) dy).
/// For the 3-component 1D system ny == 1 and there is no y halo.
/// Storage is component-major: one contiguous plane per conserved variable.
template <std::size_t N> class Field {
public:
  static constexpr long kGhost = 3;
  static constexpr int kDims = Conserved<N>::kDims;

  Field() = default;
  Field(std::size_t nx, std::size_t ny, double x0, double y0, double dx, double dy);

  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  double dx() const noexcept { return dx_; }
  double dy() const noexcept { return dy_; }
  double x(long i) const noexcept { return x0_ + (static_cast<double>(i) + 0.5) * dx_; }
  double y(long j) const noexcept { return y0_ + (static_cast<double>(j) + 0.5) * dy_; }
  double x0() const noexcept { return x0_; }
  double y0() const noexcept { return y0_; }

  /// Padded extents including the halo.
  std::size_t stride_x() const noexcept { return sx_; }
  std::size_t stride_y() const noexcept { return sy_; }
  std::size_t plane_size() const noexcept { return sx_ * sy_; }
  long ghost_y() const noexcept { return kDims == 2 ? kGhost : 0; }

  std::size_t offset(long i, long j = 0) const noexcept {
    return static_cast<std::size_t>(j + ghost_y()) * sx_ + static_cast<std::size_t>(i + kGhost);
  }

  double& at(std::size_t c, long i, long j = 0) noexcept {
    return data_[c * plane_size() + offset(i, j)];
  }
  double at(std::size_t c, long i, long j = 0) const noexcept {
    return data_[c * plane_size() + offset(i, j)];
  }

  Conserved<N> state(long i, long j = 0) const noexcept {
    Conserved<N> u;
    const std::size_t o = offset(i, j);
    for (std::size_t c = 0; c < N; ++c) u[c] = data_[c * plane_size() + o];
    return u;
  }
  void set(long i, long j, const Conserved<N>& u) noexcept {
    const std::size_t o = offset(i, j);
    for (std::size_t c = 0; c < N; ++c) data_[c * plane_size() + o] = u[c];
  }
  void set(long i, const Conserved<N>& u) noexcept { set(i, 0, u); }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  BoundarySpec& boundary() noexcept { return boundary_; }
  const BoundarySpec& boundary() const noexcept { return boundary_; }

  SolidBlock& solid() noexcept { return solid_; }
  const SolidBlock& solid() const noexcept { return solid_; }
  bool is_solid(long i, long j) const noexcept { return solid_.contains(i, j); }

  /// Interior cells not covered by the solid block.
  std::size_t fluid_count() const noexcept {
    const std::size_t blocked = solid_.empty() ? 0 : solid_.ni * solid_.nj;
    return nx_ * ny_ - blocked;
  }

  /// Fluid interior states in canonical (j-major, then i) order.
  std::vector<Conserved<N>> fluid_states() const;
  /// Fluid interior (i, j) pairs in the same order as fluid_states().
  std::vector<std::array<long, 2>> fluid_indices() const;

  /// Sum of each conserved component over fluid cells, weighted by cell volume.
  std::array<double, N> totals() const;

private:
  std::size_t nx_ = 0, ny_ = 0;
  std::size_t sx_ = 0, sy_ = 0;
  double x0_ = 0.0, y0_ = 0.0, dx_ = 1.0, dy_ = 1.0;
  std::vector<double> data_;
  BoundarySpec boundary_;
  SolidBlock solid_;
};

/// Fills every ghost layer from the field's boundary spec.
///
/// periodic wraps, outflow copies the nearest interior value, reflective
/// mirrors across the face with the normal momentum negated, inflow writes
/// the prescribed state. Only edge halos are filled; corner halo cells are
/// never read by the dimension-by-dimension operator. Walls of the solid
/// block are handled by the residual when it gathers each grid line.
template <std::size_t N> void apply_boundary(Field<N>& field, const PressureFunctional& f);

/// Normal-momentum component for a face perpendicular to the given axis.
constexpr std::size_t normal_momentum(int axis) noexcept { return axis == 0 ? 1 : 2; }

} // namespace possweep

#endif // POSSWEEP_FIELD_HPP
