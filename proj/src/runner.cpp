#include "possweep/runner.hpp"

#include "possweep/kernels/kernels.hpp"
#include "possweep/parallel.hpp"
#include "possweep/weno.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace possweep {

std::string_view status_name(RunStatus s) noexcept {
  switch (s) {
  case RunStatus::Ok: return "ok";
  case RunStatus::Infeasible: return "infeasible";
  case RunStatus::NonTermination: return "non_termination";
  case RunStatus::Negativity: return "negativity";
  case RunStatus::Domain: return "domain_error";
  }
  return "unknown";
}

std::vector<double> conservation_drift(const std::vector<double>& initial,
                                       const std::vector<double>& final_totals) {
  if (initial.size() != final_totals.size()) {
    throw std::invalid_argument("conservation_drift: component count mismatch");
  }
  std::vector<double> d(initial.size());
  for (std::size_t c = 0; c < d.size(); ++c) {
    const double change = final_totals[c] - initial[c];
    d[c] = initial[c] != 0.0 ? change / std::abs(initial[c]) : change;
  }
  return d;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_output(const std::filesystem::path& p) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  return os;
}

template <std::size_t N>
void write_field(const std::filesystem::path& path, const Field<N>& field,
                 const PressureFunctional& f) {
  std::ofstream os = open_output(path);
  if constexpr (N == 3) os << "x,rho,m,E,u,p\n";
  if constexpr (N == 4) os << "x,y,rho,m,n,E,u,v,p\n";
  if constexpr (N == 5) os << "x,y,rho,m,n,E,rhoY,u,v,p,Y\n";
  std::string line;
  for (const auto& ij : field.fluid_indices()) {
    const Conserved<N> u = field.state(ij[0], ij[1]);
    line = fmt(field.x(ij[0]));
    if constexpr (N >= 4) line += ',' + fmt(field.y(ij[1]));
    for (std::size_t c = 0; c < N; ++c) line += ',' + fmt(u[c]);
    line += ',' + fmt(u[1] / u.rho());
    if constexpr (N >= 4) line += ',' + fmt(u[2] / u.rho());
    line += ',' + fmt(pressure_unchecked(u, f));
    if constexpr (N == 5) line += ',' + fmt(u[4] / u.rho());
    os << line << '\n';
  }
}

void write_log(const std::filesystem::path& path, const std::vector<StageRecord>& log) {
  std::ofstream os = open_output(path);
  os << "step,stage,time,dt,alpha_step,alpha_stage,density_modified,pressure_sweeps,"
        "positive_branch,negative_branch,min_density,min_pressure\n";
  for (const StageRecord& r : log) {
    os << r.step << ',' << r.stage << ',' << fmt(r.time) << ',' << fmt(r.dt) << ','
       << fmt(r.alpha_step) << ',' << fmt(r.alpha_stage) << ',' << r.density_modified << ','
       << r.pressure_sweeps << ',' << r.positive_branch << ',' << r.negative_branch << ','
       << fmt(r.min_density) << ',' << fmt(r.min_pressure) << '\n';
  }
}

// NaN and infinities are not JSON numbers.
nlohmann::json num(double v) {
  if (std::isfinite(v)) return v;
  return fmt(v);
}

nlohmann::json summary_json(const RunSummary& s) {
  nlohmann::json j;
  j["problem"] = s.problem;
  j["nx"] = s.nx;
  j["ny"] = s.ny;
  j["dx"] = s.dx;
  j["dy"] = s.dy;
  j["cfl"] = s.cfl;
  j["final_time"] = s.final_time;
  j["time_reached"] = num(s.time_reached);
  j["steps"] = s.steps;
  j["wall_time_s"] = s.wall_time;
  j["limiter"] = s.limiter;
  j["eps"] = s.eps;
  j["min_density"] = num(s.min_density);
  j["min_pressure"] = num(s.min_pressure);
  j["pressure_sweeps"] = {{"max", s.stats.pressure_sweeps_max_per_stage},
                          {"average", s.stats.average_sweeps()},
                          {"total", s.stats.pressure_sweeps_total},
                          {"stages_with_sweeps", s.stats.stages_with_sweeps},
                          {"positive_branch", s.stats.positive_branch_adjustments},
                          {"negative_branch", s.stats.negative_branch_adjustments},
                          {"coincident", s.stats.coincident_skips}};
  j["density_sweeps"] = {{"total", s.stats.density_sweeps_total}};
  auto arr = [](const std::vector<double>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (double x : v) a.push_back(num(x));
    return a;
  };
  j["initial_totals"] = arr(s.initial_totals);
  j["final_totals"] = arr(s.final_totals);
  j["drift"] = arr(s.drift);
  j["simd_backend"] = s.simd_backend;
  j["status"] = status_name(s.status);
  j["message"] = s.message;
  if (s.error) j["error"] = {{"l1", s.error->l1}, {"linf", s.error->linf}};
  return j;
}

RunStatus to_status(FailureKind k) {
  switch (k) {
  case FailureKind::Infeasible: return RunStatus::Infeasible;
  case FailureKind::NonTermination: return RunStatus::NonTermination;
  case FailureKind::Negativity: return RunStatus::Negativity;
  case FailureKind::Domain: return RunStatus::Domain;
  }
  return RunStatus::Domain;
}

template <std::size_t N>
RunSummary run_system(const ProblemSpec& spec, const RunOptions& opts) {
  const PressureFunctional f = spec.pressure_functional(opts.eps);
  Field<N> field = make_field<N>(spec, f);

  RunSummary s;
  s.problem = spec.name;
  s.nx = field.nx();
  s.ny = field.ny();
  s.dx = field.dx();
  s.dy = field.dy();
  s.cfl = spec.cfl;
  s.final_time = spec.final_time;
  s.limiter = opts.limiter;
  s.eps = opts.eps;
  s.simd_backend = std::string(kernels::name(kernels::active().backend));

  const auto t0 = field.totals();
  s.initial_totals.assign(t0.begin(), t0.end());
  if (!opts.out_dir.empty()) {
    std::filesystem::create_directories(opts.out_dir);
    write_field(opts.out_dir / "initial_field.csv", field, f);
  }

  RunConfig config;
  config.cfl = spec.cfl;
  config.final_time = spec.final_time;
  config.limiter = opts.limiter;
  config.max_full_sweeps = opts.max_full_sweeps;

  SourceTerm<N> source;
  if constexpr (N == 5) {
    if (spec.reaction) {
      const ReactionConstants rc = *spec.reaction;
      source.rate = [f, rc](const Conserved<5>& u) {
        return reactive_source(u, f, rc.K, rc.activation_energy);
      };
      config.source = true;
    }
  }

  const auto start = std::chrono::steady_clock::now();
  IntegrationResult result;
  try {
    integrate_into(result, field, f, config, s.stats, &source);
  } catch (const StageFailure& e) {
    s.status = to_status(e.kind);
    s.message = e.what();
  }
  s.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  s.time_reached = result.time;
  s.steps = result.steps;
  s.min_density = result.min_density;
  s.min_pressure = result.min_pressure;
  if (!s.ok()) {
    // Include the stage that failed.
    const auto mins = min_density_pressure(field, f);
    s.min_density = std::isnan(mins[0]) ? mins[0] : std::min(s.min_density, mins[0]);
    s.min_pressure = std::isnan(mins[1]) ? mins[1] : std::min(s.min_pressure, mins[1]);
  }
  s.log = std::move(result.log);

  const auto t1 = field.totals();
  s.final_totals.assign(t1.begin(), t1.end());
  s.drift = conservation_drift(s.initial_totals, s.final_totals);
  if (s.ok() && spec.exact) s.error = density_error(field, spec.exact, s.time_reached);

  if (!opts.out_dir.empty()) {
    write_field(opts.out_dir / "final_field.csv", field, f);
    write_log(opts.out_dir / "sweep_log.csv", s.log);
    std::ofstream os = open_output(opts.out_dir / "summary.json");
    os << summary_json(s).dump(2) << '\n';
  }
  return s;
}

ProblemSpec configured(const std::string& name, const RunOptions& opts) {
  ProblemSpec spec = make_problem(name);
  if (opts.nx) spec.nx = *opts.nx;
  if (opts.ny) spec.ny = *opts.ny;
  if (opts.nx && !opts.ny && spec.dims == 2) {
    // Keep the cell aspect ratio of the canonical grid.
    const ProblemSpec canonical = make_problem(name);
    spec.ny = std::max<std::size_t>(1, *opts.nx * canonical.ny / canonical.nx);
  }
  if (opts.cfl) spec.cfl = *opts.cfl;
  if (opts.final_time) spec.final_time = *opts.final_time;
  if (!(spec.cfl > 0.0)) throw std::invalid_argument("cfl must be positive");
  if (!(spec.final_time > 0.0)) throw std::invalid_argument("final time must be positive");
  if (!(opts.eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (opts.max_full_sweeps == 0) throw std::invalid_argument("max sweeps must be positive");
  return spec;
}

} // namespace

RunSummary run_problem(const std::string& name, const RunOptions& opts) {
  const ProblemSpec spec = configured(name, opts);
  switch (spec.components) {
  case 3: return run_system<3>(spec, opts);
  case 4: return run_system<4>(spec, opts);
  case 5: return run_system<5>(spec, opts);
  default: throw std::invalid_argument("unsupported component count");
  }
}

std::vector<ConvergenceRow> convergence(const std::string& name,
                                        const std::vector<std::size_t>& resolutions,
                                        const RunOptions& base) {
  if (!make_problem(name).exact) {
    throw std::invalid_argument("problem '" + name + "' has no exact solution");
  }
  if (resolutions.empty()) throw std::invalid_argument("convergence: no resolutions given");
  std::vector<ConvergenceRow> rows;
  std::vector<double> l1, linf;
  for (std::size_t n : resolutions) {
    RunOptions o = base;
    o.nx = n;
    o.ny = n;
    if (!base.out_dir.empty()) o.out_dir = base.out_dir / ("n" + std::to_string(n));
    const RunSummary s = run_problem(name, o);
    if (!s.ok() || !s.error) {
      throw std::runtime_error("convergence run at " + std::to_string(n) + " failed: " + s.message);
    }
    rows.push_back({n, *s.error, std::nullopt, std::nullopt});
    l1.push_back(s.error->l1);
    linf.push_back(s.error->linf);
  }
  const auto o1 = convergence_order(l1, resolutions);
  const auto oinf = convergence_order(linf, resolutions);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    rows[k].l1_order = o1[k - 1];
    rows[k].linf_order = oinf[k - 1];
  }
  return rows;
}

std::string convergence_table(const std::vector<ConvergenceRow>& rows) {
  std::ostringstream os;
  os << "resolution,l1_error,l1_order,linf_error,linf_order\n";
  auto order = [](const std::optional<double>& o) { return o ? fmt(*o) : std::string(); };
  for (const auto& r : rows) {
    os << r.resolution << ',' << fmt(r.error.l1) << ',' << order(r.l1_order) << ','
       << fmt(r.error.linf) << ',' << order(r.linf_order) << '\n';
  }
  return os.str();
}

} // namespace possweep
