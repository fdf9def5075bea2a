#include "possweep/kernels/kernels.hpp"
#include "possweep/kernels/weno5_scalar.hpp"

#include <doctest.h>

#include <cstring>
#include <limits>
#include <random>
#include <vector>

using namespace possweep::kernels;

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::vector<std::vector<double>> stencil_data(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::uniform_int_distribution<int> kind(0, 5), expo(-300, 300);
  std::vector<std::vector<double>> rows(5, std::vector<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const int mode = kind(rng);
    for (int s = 0; s < 5; ++s) {
      double v = d(rng);
      if (mode == 1) v = std::ldexp(v, expo(rng));
      if (mode == 2) v = 3.0;                      // constant
      if (mode == 3) v = 0.5 * s - 1.0;            // linear
      if (mode == 4) v = s == 2 ? 1e12 : 1e-12;    // spike
      rows[s][k] = v;
    }
  }
  return rows;
}

} // namespace

TEST_CASE("scalar batch matches the pointwise reconstruction") {
  const auto rows = stencil_data(37, 1);
  std::vector<double> out(37);
  scalar::weno5_batch({rows[0].data(), rows[1].data(), rows[2].data(), rows[3].data(), rows[4].data()},
                      out.data(), out.size());
  std::vector<double> ref(37);
  for (std::size_t k = 0; k < ref.size(); ++k) {
    ref[k] = weno5(rows[0][k], rows[1][k], rows[2][k], rows[3][k], rows[4][k]);
  }
  CHECK(same_bits(out, ref));
}

TEST_CASE("backend names and fallback") {
  CHECK(name(Backend::Scalar) == "scalar");
  CHECK(available(Backend::Scalar));
  CHECK(table(Backend::Scalar).backend == Backend::Scalar);
  const Backend before = active().backend;
  set_active(Backend::Scalar);
  CHECK(active().backend == Backend::Scalar);
  set_active(before);
}

#ifdef POSSWEEP_HAVE_AVX2_KERNELS
TEST_CASE("avx2 kernels are bitwise equal to scalar") {
  if (!available(Backend::Avx2)) {
    MESSAGE("AVX2 not available on this CPU; skipped");
    return;
  }
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 8u, 13u, 1000u, 4099u}) {
    const auto rows = stencil_data(n, 10 + n);
    const StencilRows ptr{rows[0].data(), rows[1].data(), rows[2].data(), rows[3].data(), rows[4].data()};
    std::vector<double> a(n), b(n);
    scalar::weno5_batch(ptr, a.data(), n);
    avx2::weno5_batch(ptr, b.data(), n);
    CHECK(same_bits(a, b));

    std::vector<double> base = rows[0], u = rows[1], rhs = rows[2];
    std::vector<double> c(n), e(n);
    for (const auto& [x, y] : {std::pair{1.0, 0.0}, std::pair{0.75, 0.25}, std::pair{1.0 / 3.0, 2.0 / 3.0}}) {
      scalar::stage_combine(c.data(), base.data(), u.data(), rhs.data(), x, y, 1e-3, n);
      avx2::stage_combine(e.data(), base.data(), u.data(), rhs.data(), x, y, 1e-3, n);
      CHECK(same_bits(c, e));
    }
  }

  // Non-finite input propagates identically.
  std::vector<std::vector<double>> rows(5, std::vector<double>(4, 1.0));
  rows[2][1] = std::numeric_limits<double>::quiet_NaN();
  rows[3][2] = std::numeric_limits<double>::infinity();
  const StencilRows ptr{rows[0].data(), rows[1].data(), rows[2].data(), rows[3].data(), rows[4].data()};
  std::vector<double> a(4), b(4);
  scalar::weno5_batch(ptr, a.data(), 4);
  avx2::weno5_batch(ptr, b.data(), 4);
  for (std::size_t k = 0; k < 4; ++k) CHECK(std::isnan(a[k]) == std::isnan(b[k]));
  CHECK(a[0] == b[0]);
  CHECK(a[3] == b[3]);
}
#endif
