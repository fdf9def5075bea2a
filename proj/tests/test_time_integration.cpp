#include "possweep/time_integration.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

using namespace possweep;

namespace {

const PressureFunctional gas{1.4, 0.0, kDefaultEps};

Field<3> smooth_periodic(std::size_t n) {
  Field<3> field(n, 1, 0.0, 0.0, 1.0 / static_cast<double>(n), 1.0);
  for (auto& s : field.boundary().sides) s = BoundaryCondition::periodic();
  for (long i = 0; i < static_cast<long>(n); ++i) {
    const double x = 6.283185307179586 * field.x(i);
    field.set(i, to_conserved<3>(Primitive{1.0 + 0.5 * std::sin(x), 0.5 + 0.2 * std::cos(x), 0.0,
                                           1.0 + 0.2 * std::sin(x + 1.0), 0.0},
                                 gas));
  }
  apply_boundary(field, gas);
  return field;
}

} // namespace

TEST_CASE("compute_dt") {
  CHECK(compute_dt({2.0, 0.0}, 0.1, 1.0, 0.5, 1) == doctest::Approx(0.025));
  CHECK(compute_dt({1.0, 1.0}, 0.1, 0.1, 0.5, 2) == doctest::Approx(0.025));
  CHECK(compute_dt({2.0, 0.0}, 0.1, 1.0, 0.5, 1, 0.01) == 0.01);
  CHECK(compute_dt({2.0, 0.0}, 0.1, 1.0, 0.5, 1, 1.0) == doctest::Approx(0.025));
}

TEST_CASE("zero residual leaves the field unchanged") {
  Field<3> field = smooth_periodic(16);
  const std::vector<double> before(field.data().begin(), field.data().end());
  int limiter_calls = 0;
  StageOperator<3> op = [](Field<3>& f) {
    ResidualOutput<3> out;
    out.residual.assign(f.data().size(), 0.0);
    out.alpha = {1.0, 0.0};
    return out;
  };
  StageLimiter<3> limit = [&](Field<3>&, int) { ++limiter_calls; };
  rk3_step(field, 0.1, op, limit);
  CHECK(limiter_calls == 3);
  for (long i = 0; i < 16; ++i) {
    for (std::size_t c = 0; c < 3; ++c) {
      CHECK(field.at(c, i) == doctest::Approx(before[c * field.plane_size() + field.offset(i)]).epsilon(1e-15));
    }
  }
}

TEST_CASE("rk3 amplification factor on u' = lambda u") {
  for (double z : {-0.1, -0.5, -1.0, -2.5, 0.3}) {
    Field<3> field(4, 1, 0.0, 0.0, 1.0, 1.0);
    for (long i = 0; i < 4; ++i) field.set(i, State1D{{1.0, 2.0, -3.0}});
    const double lambda = 2.0;
    const double dt = z / lambda;
    StageOperator<3> op = [&](Field<3>& f) {
      ResidualOutput<3> out;
      out.residual.assign(f.data().size(), 0.0);
      for (long i = 0; i < 4; ++i) {
        for (std::size_t c = 0; c < 3; ++c) out.residual[c * f.plane_size() + f.offset(i)] = lambda * f.at(c, i);
      }
      out.alpha = {1.0, 0.0};
      return out;
    };
    StageLimiter<3> none = [](Field<3>&, int) {};
    rk3_step(field, dt, op, none);
    const double g = 1.0 + z + z * z / 2.0 + z * z * z / 6.0;
    CHECK(field.at(0, 2) == doctest::Approx(g).epsilon(1e-14));
    CHECK(field.at(1, 0) == doctest::Approx(2.0 * g).epsilon(1e-14));
    CHECK(field.at(2, 3) == doctest::Approx(-3.0 * g).epsilon(1e-14));
  }
}

TEST_CASE("stage failures carry the stage index") {
  Field<3> field = smooth_periodic(8);
  StageOperator<3> op = [](Field<3>& f) {
    ResidualOutput<3> out;
    out.residual.assign(f.data().size(), 0.0);
    out.alpha = {1.0, 0.0};
    return out;
  };
  StageLimiter<3> limit = [](Field<3>&, int stage) {
    if (stage == 2) throw InfeasibleError("mean pressure below eps");
  };
  try {
    rk3_step(field, 0.1, op, limit, 0.5);
    FAIL("expected StageFailure");
  } catch (const StageFailure& e) {
    CHECK(e.kind == FailureKind::Infeasible);
    CHECK(e.stage == 2);
    CHECK(e.time == 0.5);
  }
}

TEST_CASE("periodic Euler step conserves totals") {
  Field<3> field = smooth_periodic(64);
  const auto t0 = field.totals();
  RunConfig config;
  config.cfl = 0.5;
  config.final_time = 0.05;
  SweepStats stats;
  const auto r = integrate(field, gas, config, stats);
  CHECK(r.time == config.final_time);
  CHECK(r.steps > 0);
  CHECK(r.log.size() == 3 * r.steps);
  const auto t1 = field.totals();
  for (std::size_t c = 0; c < 3; ++c) CHECK(std::abs(t1[c] - t0[c]) <= 1e-12 * std::abs(t0[c]));
  CHECK(r.min_density >= gas.eps);
  CHECK(r.min_pressure >= gas.eps);
}

TEST_CASE("limiter is a no-op on admissible runs") {
  Field<3> a = smooth_periodic(48);
  Field<3> b = smooth_periodic(48);
  RunConfig config;
  config.cfl = 0.6;
  config.final_time = 0.1;
  SweepStats sa, sb;
  integrate(a, gas, config, sa);
  config.limiter = false;
  integrate(b, gas, config, sb);
  CHECK(sa.stages_with_sweeps == 0);
  CHECK(std::memcmp(a.data().data(), b.data().data(), a.data().size() * sizeof(double)) == 0);
}

TEST_CASE("without the limiter a negative stage is reported") {
  Field<3> field(50, 1, 0.0, 0.0, 0.02, 1.0);
  for (auto& s : field.boundary().sides) s = BoundaryCondition::outflow();
  for (long i = 0; i < 50; ++i) {
    const double u = i < 25 ? -2.0 : 2.0;
    field.set(i, to_conserved<3>(Primitive{1.0, u, 0.0, 1e-3, 0.0}, gas));
  }
  apply_boundary(field, gas);
  RunConfig config;
  config.cfl = 0.9;
  config.final_time = 0.2;
  config.limiter = false;
  SweepStats stats;
  CHECK_THROWS_AS(integrate(field, gas, config, stats), StageFailure);

  Field<3> again(50, 1, 0.0, 0.0, 0.02, 1.0);
  for (auto& s : again.boundary().sides) s = BoundaryCondition::outflow();
  for (long i = 0; i < 50; ++i) {
    const double u = i < 25 ? -2.0 : 2.0;
    again.set(i, to_conserved<3>(Primitive{1.0, u, 0.0, 1e-3, 0.0}, gas));
  }
  apply_boundary(again, gas);
  config.limiter = true;
  const auto r = integrate(again, gas, config, stats);
  CHECK(r.time == config.final_time);
  CHECK(r.min_density >= gas.eps);
  CHECK(r.min_pressure >= gas.eps);
  for (const auto& rec : r.log) {
    CHECK(rec.min_density >= gas.eps);
    CHECK(rec.min_pressure >= gas.eps);
    CHECK(rec.alpha_step > 0.0);
    CHECK(rec.alpha_stage > 0.0);
  }
}
