// possweep: run the positivity-preserving WENO solver on the canonical
// problems and write field, summary and sweep-log files.
//
//   possweep run <problem> [--nx N] [--ny N] [--cfl C] [--tfinal T]
//                          [--no-limiter] [--eps E] [--max-sweeps K] [--out DIR]
//   possweep convergence vortex --resolutions 45,90,180 [--cfl C] [--tfinal T] [--out DIR]
//
// Exit status: 0 success, 1 usage error, 2 limiter infeasible or did not
// terminate, 3 negativity, NaN or other solver domain error.

#include "possweep/kernels/kernels.hpp"
#include "possweep/parallel.hpp"
#include "possweep/runner.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace {

int exit_code(possweep::RunStatus s) {
  using possweep::RunStatus;
  switch (s) {
  case RunStatus::Ok: return 0;
  case RunStatus::Infeasible:
  case RunStatus::NonTermination: return 2;
  case RunStatus::Negativity:
  case RunStatus::Domain: return 3;
  }
  return 3;
}

void print_summary(const possweep::RunSummary& s) {
  std::printf("problem        %s (%zu x %zu)\n", s.problem.c_str(), s.nx, s.ny);
  std::printf("status         %s\n", std::string(possweep::status_name(s.status)).c_str());
  if (!s.message.empty()) std::printf("message        %s\n", s.message.c_str());
  std::printf("time reached   %.17g / %.17g in %zu steps (%.3f s, %s, %zu threads)\n",
              s.time_reached, s.final_time, s.steps, s.wall_time, s.simd_backend.c_str(),
              possweep::thread_count());
  std::printf("min rho, p     %.6e  %.6e\n", s.min_density, s.min_pressure);
  std::printf("pressure sweep max %zu  average %.4f  total %zu\n",
              s.stats.pressure_sweeps_max_per_stage, s.stats.average_sweeps(),
              s.stats.pressure_sweeps_total);
  std::printf("density sweep  total %zu\n", s.stats.density_sweeps_total);
  std::printf("drift         ");
  for (double d : s.drift) std::printf(" %.3e", d);
  std::printf("\n");
  if (s.error) std::printf("rho error      L1 %.6e  Linf %.6e\n", s.error->l1, s.error->linf);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Positivity-preserving WENO5 Euler solver with a sweeping limiter"};
  app.require_subcommand(1);

  std::string problem;
  std::size_t nx = 0, ny = 0, max_sweeps = 100;
  double cfl = 0.0, tfinal = 0.0, eps = possweep::kDefaultEps;
  bool no_limiter = false;
  std::string out;

  std::string names;
  for (auto n : possweep::problem_names()) names += std::string(names.empty() ? "" : ", ") + std::string(n);

  CLI::App* run = app.add_subcommand("run", "Run one problem");
  run->add_option("problem", problem, "One of: " + names)->required();
  run->add_option("--nx", nx, "Points in x")->check(CLI::PositiveNumber);
  run->add_option("--ny", ny, "Points in y (2D)")->check(CLI::PositiveNumber);
  run->add_option("--cfl", cfl, "CFL number")->check(CLI::PositiveNumber);
  run->add_option("--tfinal", tfinal, "Final time")->check(CLI::PositiveNumber);
  run->add_flag("--no-limiter", no_limiter, "Disable the sweeping limiter");
  run->add_option("--eps", eps, "Positivity threshold")->check(CLI::PositiveNumber);
  run->add_option("--max-sweeps", max_sweeps, "Full pressure sweeps allowed per stage")
      ->check(CLI::PositiveNumber);
  run->add_option("--out", out, "Output directory");

  std::string conv_problem;
  std::vector<std::size_t> resolutions{45, 90, 180};
  CLI::App* conv = app.add_subcommand("convergence", "Grid-convergence table");
  conv->add_option("problem", conv_problem, "Problem with an exact solution")->required();
  conv->add_option("--resolutions", resolutions, "Comma-separated n for n x n grids")
      ->delimiter(',');
  conv->add_option("--cfl", cfl, "CFL number")->check(CLI::PositiveNumber);
  conv->add_option("--tfinal", tfinal, "Final time")->check(CLI::PositiveNumber);
  conv->add_option("--out", out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  possweep::RunOptions opts;
  if (nx) opts.nx = nx;
  if (ny) opts.ny = ny;
  if (cfl > 0.0) opts.cfl = cfl;
  if (tfinal > 0.0) opts.final_time = tfinal;
  opts.limiter = !no_limiter;
  opts.eps = eps;
  opts.max_full_sweeps = max_sweeps;
  opts.out_dir = out;

  try {
    if (*run) {
      const possweep::RunSummary s = possweep::run_problem(problem, opts);
      print_summary(s);
      if (!s.ok()) std::fprintf(stderr, "error: %s\n", s.message.c_str());
      return exit_code(s.status);
    }
    const auto rows = possweep::convergence(conv_problem, resolutions, opts);
    const std::string table = possweep::convergence_table(rows);
    std::cout << table;
    if (!out.empty()) {
      std::ofstream os(std::filesystem::path(out) / "convergence.csv");
      os << table;
    }
    return 0;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
