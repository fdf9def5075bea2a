// AVX2 variants of the kernels in scalar.cpp. Each vector expression follows
// the scalar evaluation order exactly and avoids FMA, so lanes round the
// same way as the reference.

#include "possweep/kernels/kernels.hpp"
#include "possweep/kernels/weno5_scalar.hpp"

#if defined(POSSWEEP_HAVE_AVX2_KERNELS)

#include <immintrin.h>

#define POSSWEEP_AVX2 __attribute__((target("avx2")))

namespace possweep::kernels::avx2 {

namespace {

POSSWEEP_AVX2 inline __m256d smoothness(__m256d k1312, __m256d quarter, __m256d s, __m256d r) {
  return _mm256_add_pd(_mm256_mul_pd(k1312, _mm256_mul_pd(s, s)),
                       _mm256_mul_pd(quarter, _mm256_mul_pd(r, r)));
}

POSSWEEP_AVX2 inline __m256d weno5_vec(__m256d a, __m256d b, __m256d c, __m256d d, __m256d e) {
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d three = _mm256_set1_pd(3.0);
  const __m256d four = _mm256_set1_pd(4.0);
  const __m256d five = _mm256_set1_pd(5.0);
  const __m256d six = _mm256_set1_pd(6.0);
  const __m256d seven = _mm256_set1_pd(7.0);
  const __m256d eleven = _mm256_set1_pd(11.0);
  const __m256d quarter = _mm256_set1_pd(0.25);
  const __m256d k1312 = _mm256_set1_pd(kThirteenTwelfths);
  const __m256d eps = _mm256_set1_pd(kWenoEps);

  // Candidates.
  const __m256d q0 = _mm256_div_pd(
      _mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(two, a), _mm256_mul_pd(seven, b)),
                    _mm256_mul_pd(eleven, c)),
      six);
  const __m256d neg_b = _mm256_xor_pd(b, _mm256_set1_pd(-0.0));
  const __m256d q1 = _mm256_div_pd(
      _mm256_add_pd(_mm256_add_pd(neg_b, _mm256_mul_pd(five, c)), _mm256_mul_pd(two, d)), six);
  const __m256d q2 = _mm256_div_pd(
      _mm256_sub_pd(_mm256_add_pd(_mm256_mul_pd(two, c), _mm256_mul_pd(five, d)), e), six);

  // Smoothness indicators.
  const __m256d s0 = _mm256_add_pd(_mm256_sub_pd(a, _mm256_mul_pd(two, b)), c);
  const __m256d r0 = _mm256_add_pd(_mm256_sub_pd(a, _mm256_mul_pd(four, b)), _mm256_mul_pd(three, c));
  const __m256d s1 = _mm256_add_pd(_mm256_sub_pd(b, _mm256_mul_pd(two, c)), d);
  const __m256d r1 = _mm256_sub_pd(b, d);
  const __m256d s2 = _mm256_add_pd(_mm256_sub_pd(c, _mm256_mul_pd(two, d)), e);
  const __m256d r2 =
      _mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(three, c), _mm256_mul_pd(four, d)), e);

  const __m256d g0 = _mm256_add_pd(eps, smoothness(k1312, quarter, s0, r0));
  const __m256d g1 = _mm256_add_pd(eps, smoothness(k1312, quarter, s1, r1));
  const __m256d g2 = _mm256_add_pd(eps, smoothness(k1312, quarter, s2, r2));

  const __m256d a0 = _mm256_div_pd(_mm256_set1_pd(kD0), _mm256_mul_pd(g0, g0));
  const __m256d a1 = _mm256_div_pd(_mm256_set1_pd(kD1), _mm256_mul_pd(g1, g1));
  const __m256d a2 = _mm256_div_pd(_mm256_set1_pd(kD2), _mm256_mul_pd(g2, g2));
  const __m256d sum = _mm256_add_pd(_mm256_add_pd(a0, a1), a2);

  // Same base selection as the scalar kernel.
  const __m256d m1 = _mm256_cmp_pd(a1, a0, _CMP_GT_OQ);
  const __m256d m2 = _mm256_cmp_pd(a2, _mm256_blendv_pd(a0, a1, m1), _CMP_GT_OQ);
  const __m256d m12 = _mm256_or_pd(m1, m2);
  const __m256d qb = _mm256_blendv_pd(_mm256_blendv_pd(q0, q1, m1), q2, m2);
  const __m256d ai = _mm256_blendv_pd(a1, a0, m12);
  const __m256d qi = _mm256_blendv_pd(q1, q0, m12);
  const __m256d aj = _mm256_blendv_pd(a2, a1, m2);
  const __m256d qj = _mm256_blendv_pd(q2, q1, m2);

  const __m256d corr = _mm256_add_pd(_mm256_mul_pd(ai, _mm256_sub_pd(qi, qb)),
                                     _mm256_mul_pd(aj, _mm256_sub_pd(qj, qb)));
  return _mm256_add_pd(qb, _mm256_div_pd(corr, sum));
}

} // namespace

POSSWEEP_AVX2 void weno5_batch(const StencilRows& rows, double* out, std::size_t n) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d v = weno5_vec(_mm256_loadu_pd(rows[0] + k), _mm256_loadu_pd(rows[1] + k),
                                _mm256_loadu_pd(rows[2] + k), _mm256_loadu_pd(rows[3] + k),
                                _mm256_loadu_pd(rows[4] + k));
    _mm256_storeu_pd(out + k, v);
  }
  for (; k < n; ++k) {
    out[k] = weno5(rows[0][k], rows[1][k], rows[2][k], rows[3][k], rows[4][k]);
  }
}

POSSWEEP_AVX2 void stage_combine(double* out, const double* base, const double* u,
                                 const double* rhs, double a, double b, double dt, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  const __m256d vdt = _mm256_set1_pd(dt);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d inner =
        _mm256_add_pd(_mm256_loadu_pd(u + k), _mm256_mul_pd(vdt, _mm256_loadu_pd(rhs + k)));
    const __m256d v =
        _mm256_add_pd(_mm256_mul_pd(va, _mm256_loadu_pd(base + k)), _mm256_mul_pd(vb, inner));
    _mm256_storeu_pd(out + k, v);
  }
  for (; k < n; ++k) {
    out[k] = a * base[k] + b * (u[k] + dt * rhs[k]);
  }
}

} // namespace possweep::kernels::avx2

#endif
