#include "possweep/time_integration.hpp"

#include "possweep/kernels/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace possweep {

double compute_dt(std::array<double, 2> alpha, double dx, double dy, double cfl, int dims,
                  double remaining) {
  double dt = dims == 1 ? cfl * dx / alpha[0] : cfl / (alpha[0] / dx + alpha[1] / dy);
  return std::min(dt, remaining);
}

namespace {

std::string failure_message(FailureKind kind, int stage, double time, const std::string& what) {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
  case FailureKind::Infeasible: os << "limiter infeasible"; break;
  case FailureKind::NonTermination: os << "limiter did not terminate"; break;
  case FailureKind::Negativity: os << "negativity detected"; break;
  case FailureKind::Domain: os << "domain error"; break;
  }
  os << " at RK stage " << stage << ", t = " << time << ": " << what;
  return os.str();
}

} // namespace

StageFailure::StageFailure(FailureKind kind_, int stage_, double time_, const std::string& what)
    : std::runtime_error(failure_message(kind_, stage_, time_, what)), kind(kind_),
      stage(stage_), time(time_) {}

template <std::size_t N>
void rk3_step(Field<N>& field, double dt, const StageOperator<N>& op,
              const StageLimiter<N>& limit, double time) {
  const kernels::KernelTable& kt = kernels::active();
  const std::vector<double> base(field.data().begin(), field.data().end());
  const std::size_t size = base.size();

  struct StageWeights {
    double a, b;
  };
  static constexpr StageWeights weights[3] = {{0.0, 1.0}, {0.75, 0.25}, {1.0 / 3.0, 2.0 / 3.0}};

  for (int stage = 1; stage <= 3; ++stage) {
    try {
      const ResidualOutput<N> r = op(field);
      double* u = field.data().data();
      const StageWeights w = weights[stage - 1];
      kt.stage_combine(u, base.data(), u, r.residual.data(), w.a, w.b, dt, size);
      if (limit) limit(field, stage);
    } catch (const StageFailure&) {
      throw;
    } catch (const InfeasibleError& e) {
      throw StageFailure(FailureKind::Infeasible, stage, time, e.what());
    } catch (const NonTerminationError& e) {
      throw StageFailure(FailureKind::NonTermination, stage, time, e.what());
    } catch (const std::domain_error& e) {
      throw StageFailure(FailureKind::Domain, stage, time, e.what());
    }
  }
}

template <std::size_t N>
std::array<double, 2> min_density_pressure(const Field<N>& field, const PressureFunctional& f) {
  double rmin = std::numeric_limits<double>::infinity();
  double pmin = std::numeric_limits<double>::infinity();
  const long nx = static_cast<long>(field.nx());
  const long ny = static_cast<long>(field.ny());
  for (long j = 0; j < ny; ++j) {
    for (long i = 0; i < nx; ++i) {
      if (field.is_solid(i, j)) continue;
      const Conserved<N> u = field.state(i, j);
      const double p = pressure_unchecked(u, f);
      if (!is_finite(u) || std::isnan(p)) return {std::nan(""), std::nan("")};
      rmin = std::min(rmin, u.rho());
      pmin = std::min(pmin, p);
    }
  }
  return {rmin, pmin};
}

template <std::size_t N>
void integrate_into(IntegrationResult& result, Field<N>& field, const PressureFunctional& f,
                    const RunConfig& config, SweepStats& stats, const SourceTerm<N>* source,
                    const DiscretizationOptions& opts) {
  const int dims = Field<N>::kDims;
  const bool with_source = config.source && source != nullptr && source->rate;
  const LimiterOptions lopts{config.max_full_sweeps};

  StageRecord current;

  StageOperator<N> op = [&](Field<N>& s) {
    apply_boundary(s, f);
    ResidualOutput<N> r = compute_residual(s, f, opts);
    current.alpha_stage = std::max(r.alpha[0], r.alpha[1]);
    if (with_source) {
      const std::size_t plane = s.plane_size();
      for (long j = 0; j < static_cast<long>(s.ny()); ++j) {
        for (long i = 0; i < static_cast<long>(s.nx()); ++i) {
          if (s.is_solid(i, j)) continue;
          const Conserved<N> rate = source->rate(s.state(i, j));
          const std::size_t o = s.offset(i, j);
          for (std::size_t c = 0; c < N; ++c) r.residual[c * plane + o] += rate[c];
        }
      }
    }
    return r;
  };

  StageLimiter<N> limit = [&](Field<N>& s, int stage) {
    current.stage = stage;
    current.density_modified = 0;
    current.pressure_sweeps = 0;
    current.positive_branch = 0;
    current.negative_branch = 0;
    if (config.limiter) {
      const LimiterReport rep = apply_limiter(s, f, lopts, stats);
      current.density_modified = rep.density_modified;
      current.pressure_sweeps = rep.pressure.full_sweeps;
      current.positive_branch = rep.pressure.positive_branch;
      current.negative_branch = rep.pressure.negative_branch;
    }
    const auto mins = min_density_pressure(s, f);
    current.min_density = mins[0];
    current.min_pressure = mins[1];
    result.log.push_back(current);

    const bool finite = !std::isnan(mins[0]) && !std::isnan(mins[1]);
    if (config.limiter) {
      if (!finite || !(mins[0] >= f.eps) || !(mins[1] >= f.eps)) {
        std::ostringstream os;
        os.precision(17);
        os << "limiter output not admissible: min rho " << mins[0] << ", min p " << mins[1];
        throw StageFailure(FailureKind::Negativity, stage, current.time, os.str());
      }
    } else if (!finite || !(mins[0] > 0.0) || !(mins[1] > 0.0)) {
      std::ostringstream os;
      os.precision(17);
      os << "min rho " << mins[0] << ", min p " << mins[1] << (finite ? "" : " (non-finite data)");
      throw StageFailure(FailureKind::Negativity, stage, current.time, os.str());
    }
    result.min_density = std::min(result.min_density, mins[0]);
    result.min_pressure = std::min(result.min_pressure, mins[1]);
  };

  double time = result.time;
  while (time < config.final_time) {
    apply_boundary(field, f);
    std::array<double, 2> alpha{};
    try {
      alpha = global_alpha(field, f);
    } catch (const std::domain_error& e) {
      throw StageFailure(FailureKind::Domain, 0, time, e.what());
    }
    const double remaining = config.final_time - time;
    double dt = compute_dt(alpha, field.dx(), field.dy(), config.cfl, dims, remaining);
    const bool last = dt >= remaining;

    current = StageRecord{};
    current.step = result.steps;
    current.time = time;
    current.dt = dt;
    current.alpha_step = std::max(alpha[0], alpha[1]);

    rk3_step(field, dt, op, limit, time);

    time = last ? config.final_time : time + dt;
    result.time = time;
    ++result.steps;
  }
  apply_boundary(field, f);
}

template <std::size_t N>
IntegrationResult integrate(Field<N>& field, const PressureFunctional& f, const RunConfig& config,
                            SweepStats& stats, const SourceTerm<N>* source,
                            const DiscretizationOptions& opts) {
  IntegrationResult result;
  integrate_into(result, field, f, config, stats, source, opts);
  return result;
}

#define POSSWEEP_INSTANTIATE_TIME(N)                                                             \
  template void rk3_step<N>(Field<N>&, double, const StageOperator<N>&, const StageLimiter<N>&, \
                            double);                                                            \
  template std::array<double, 2> min_density_pressure<N>(const Field<N>&,                       \
                                                         const PressureFunctional&);            \
  template IntegrationResult integrate<N>(Field<N>&, const PressureFunctional&, const RunConfig&, \
                                          SweepStats&, const SourceTerm<N>*,                    \
                                          const DiscretizationOptions&);                        \
  template void integrate_into<N>(IntegrationResult&, Field<N>&, const PressureFunctional&,     \
                                  const RunConfig&, SweepStats&, const SourceTerm<N>*,          \
                                  const DiscretizationOptions&);

POSSWEEP_INSTANTIATE_TIME(3)
POSSWEEP_INSTANTIATE_TIME(4)
POSSWEEP_INSTANTIATE_TIME(5)

#undef POSSWEEP_INSTANTIATE_TIME

} // namespace possweep
