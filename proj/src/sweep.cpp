#include "possweep/sweep.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace possweep {

namespace {

std::string non_termination_message(std::size_t sweeps, double worst_pressure,
                                    std::size_t worst_index) {
  std::ostringstream os;
  os.precision(17);
  os << "pressure sweep did not terminate after " << sweeps
     << " full sweeps; worst pressure " << worst_pressure << " at index " << worst_index;
  return os.str();
}

} // namespace

NonTerminationError::NonTerminationError(std::size_t sweeps_, double worst_pressure_,
                                         std::size_t worst_index_)
    : std::runtime_error(non_termination_message(sweeps_, worst_pressure_, worst_index_)),
      sweeps(sweeps_), worst_pressure(worst_pressure_), worst_index(worst_index_) {}

std::size_t density_sweep(std::span<double> rho, double eps) {
  const std::size_t n = rho.size();
  if (n == 0) return 0;
  double sum = 0.0;
  for (double r : rho) sum += r;
  if (!(sum / static_cast<double>(n) > eps)) {
    std::ostringstream os;
    os.precision(17);
    os << "density sweep infeasible: mean density " << sum / static_cast<double>(n)
       << " <= eps " << eps;
    throw InfeasibleError(os.str());
  }

  std::size_t modified = 0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    if (rho[j] < eps) {
      rho[j + 1] += rho[j] - eps;
      rho[j] = eps;
      ++modified;
    }
  }
  for (std::size_t j = n - 1; j >= 1; --j) {
    if (rho[j] < eps) {
      rho[j - 1] += rho[j] - eps;
      rho[j] = eps;
      ++modified;
    }
  }
  return modified;
}

template <std::size_t N>
NodeAdjustResult<N> node_adjust(const Conserved<N>& u1, const Conserved<N>& u2,
                                const Conserved<N>& ubar, const PressureFunctional& f) {
  const double eps = f.eps;
  const double p1 = pressure_unchecked(u1, f);
  const double p2 = pressure_unchecked(u2, f);

  NodeAdjustResult<N> out;
  if (p2 > eps) {
    out.branch = AdjustBranch::PositiveNeighbor;
    out.t = (p1 - eps) / (p1 - p2);
  } else {
    const double dist12 = state_norm(u1 - u2);
    if (dist12 == 0.0) {
      out.branch = AdjustBranch::Coincident;
      out.t = 0.0;
      out.state = u1;
      return out;
    }
    out.branch = AdjustBranch::NegativeNeighbor;
    const double t1 = (p1 - eps) / (p1 - pressure_unchecked(ubar, f));
    out.t = std::min(t1 * (state_norm(u1 - ubar) / dist12), 0.25);
  }
  out.state = (1.0 - out.t) * u1 + out.t * u2;
  if (out.branch == AdjustBranch::PositiveNeighbor) {
    // Near the threshold the evaluated pressure can round below eps when E is
    // large. Move further toward u2 until it does not; t = 1 gives p(u2) > eps.
    double step = 4.0 * std::numeric_limits<double>::epsilon();
    while (pressure_unchecked(out.state, f) < eps && out.t < 1.0) {
      out.t = std::min(1.0, out.t + step * (1.0 - out.t) + step);
      out.state = (1.0 - out.t) * u1 + out.t * u2;
      step *= 2.0;
    }
  }
  return out;
}

template <std::size_t N>
PressureSweepResult pressure_sweep(std::span<Conserved<N>> states, const PressureFunctional& f,
                                   std::size_t max_full_sweeps,
                                   std::span<const std::vector<std::size_t>> orderings,
                                   const AdjustObserver<N>* observer) {
  PressureSweepResult result;
  const std::size_t n = states.size();
  if (n == 0) return result;
  const double eps = f.eps;

  for (std::size_t k = 0; k < n; ++k) {
    if (!(states[k].rho() >= eps)) {
      throw std::domain_error("pressure sweep requires densities >= eps; index " +
                              std::to_string(k) + " has " + std::to_string(states[k].rho()));
    }
  }

  const Conserved<N> ubar = mean_state<N>(states);
  const double pbar = pressure_unchecked(ubar, f);
  if (!(pbar > eps)) {
    std::ostringstream os;
    os.precision(17);
    os << "pressure sweep infeasible: pressure of the mean state " << pbar << " <= eps " << eps;
    throw InfeasibleError(os.str());
  }

  auto worst = [&](std::size_t& index) {
    double pmin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
      const double p = pressure_unchecked(states[k], f);
      if (p < pmin || std::isnan(p)) {
        pmin = p;
        index = k;
      }
    }
    return pmin;
  };

  auto exchange = [&](std::size_t negative, std::size_t neighbor) {
    const NodeAdjustResult<N> adj = node_adjust(states[negative], states[neighbor], ubar, f);
    switch (adj.branch) {
    case AdjustBranch::PositiveNeighbor: ++result.positive_branch; break;
    case AdjustBranch::NegativeNeighbor: ++result.negative_branch; break;
    case AdjustBranch::Coincident: ++result.coincident; return;
    }
    Adjustment<N> record;
    if (observer) {
      record.negative_index = negative;
      record.neighbor_index = neighbor;
      record.negative_before = states[negative];
      record.neighbor_before = states[neighbor];
      record.t = adj.t;
      record.branch = adj.branch;
    }
    const Conserved<N> transfer = states[negative] - adj.state;
    states[neighbor] += transfer;
    states[negative] = adj.state;
    if (observer) {
      record.negative_after = states[negative];
      record.neighbor_after = states[neighbor];
      (*observer)(record);
    }
  };

  std::size_t worst_index = 0;
  double pmin = worst(worst_index);
  while (pmin < eps || std::isnan(pmin)) {
    if (result.full_sweeps >= max_full_sweeps) {
      throw NonTerminationError(result.full_sweeps, pmin, worst_index);
    }
    const std::vector<std::size_t>* order =
        orderings.empty() ? nullptr : &orderings[result.full_sweeps % orderings.size()];
    ++result.full_sweeps;

    const std::size_t m = order ? order->size() : n;
    auto at = [&](std::size_t pos) { return order ? (*order)[pos] : pos; };

    for (std::size_t pos = 0; pos + 1 < m; ++pos) {
      const std::size_t j = at(pos);
      if (pressure_unchecked(states[j], f) < eps) exchange(j, at(pos + 1));
    }
    for (std::size_t pos = m; pos-- > 1;) {
      const std::size_t j = at(pos);
      if (pressure_unchecked(states[j], f) < eps) exchange(j, at(pos - 1));
    }
    pmin = worst(worst_index);
  }
  return result;
}

std::vector<GridIndex> snake_order(std::size_t nx, std::size_t ny, SnakeVariant variant) {
  std::vector<GridIndex> out;
  out.reserve(nx * ny);
  if (variant == SnakeVariant::SweepI) {
    for (std::size_t j = 0; j < ny; ++j) {
      for (std::size_t k = 0; k < nx; ++k) {
        // j is 0-based here, so even j corresponds to odd 1-based lines.
        out.push_back({j % 2 == 0 ? k : nx - 1 - k, j});
      }
    }
  } else {
    for (std::size_t i = 0; i < nx; ++i) {
      for (std::size_t k = 0; k < ny; ++k) {
        out.push_back({i, i % 2 == 0 ? k : ny - 1 - k});
      }
    }
  }
  return out;
}

#define POSSWEEP_INSTANTIATE_SWEEP(N)                                                          \
  template NodeAdjustResult<N> node_adjust<N>(const Conserved<N>&, const Conserved<N>&,        \
                                              const Conserved<N>&, const PressureFunctional&); \
  template PressureSweepResult pressure_sweep<N>(std::span<Conserved<N>>,                      \
                                                 const PressureFunctional&, std::size_t,       \
                                                 std::span<const std::vector<std::size_t>>,    \
                                                 const AdjustObserver<N>*);

POSSWEEP_INSTANTIATE_SWEEP(3)
POSSWEEP_INSTANTIATE_SWEEP(4)
POSSWEEP_INSTANTIATE_SWEEP(5)

#undef POSSWEEP_INSTANTIATE_SWEEP

} // namespace possweep
