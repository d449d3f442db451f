// AVX2 variants of the complex inner loops.  Compiled with -mavx2 -mfma;
// only reached through the dispatch table after a cpuid check.

#include "scat1d/kernels.hpp"

#if defined(SCAT1D_HAVE_AVX2)

#include <immintrin.h>

namespace scat1d::kern {
namespace {

// One __m256d holds two complex doubles as [re0, im0, re1, im1].

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

cplx dot_conj_avx2(const cplx* a, const cplx* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  __m256d acc_p = _mm256_setzero_pd();  // a .* b           -> re parts
  __m256d acc_q = _mm256_setzero_pd();  // a .* swap(b)     -> im parts
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d va = _mm256_loadu_pd(pa + 2 * i);
    __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    acc_p = _mm256_fmadd_pd(va, vb, acc_p);
    acc_q = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0x5), acc_q);
  }
  // re = sum over lanes of acc_p; im = (+,-,+,-) signed sum of acc_q:
  // per complex, im += ar*bi - ai*br.
  const __m256d sign = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0);
  double re = hsum(acc_p);
  double im = hsum(_mm256_mul_pd(acc_q, sign));
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

void axpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const double* px = reinterpret_cast<const double*>(x);
  double* py = reinterpret_cast<double*>(y);
  const __m256d vc = _mm256_set1_pd(alpha.real());
  const __m256d vd = _mm256_set_pd(alpha.imag(), -alpha.imag(), alpha.imag(),
                                   -alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(px + 2 * i);
    __m256d vy = _mm256_loadu_pd(py + 2 * i);
    vy = _mm256_fmadd_pd(vc, vx, vy);
    vy = _mm256_fmadd_pd(vd, _mm256_permute_pd(vx, 0x5), vy);
    _mm256_storeu_pd(py + 2 * i, vy);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void pointwise_mul_avx2(const cplx* x, cplx* y, std::size_t n) {
  const double* px = reinterpret_cast<const double*>(x);
  double* py = reinterpret_cast<double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(px + 2 * i);
    __m256d vy = _mm256_loadu_pd(py + 2 * i);
    __m256d t1 = _mm256_mul_pd(_mm256_movedup_pd(vy), vx);           // yr*xr, yr*xi
    __m256d t2 = _mm256_mul_pd(_mm256_permute_pd(vy, 0xF),           // yi, yi
                               _mm256_permute_pd(vx, 0x5));          // xi, xr
    _mm256_storeu_pd(py + 2 * i, _mm256_addsub_pd(t1, t2));
  }
  for (; i < n; ++i) y[i] *= x[i];
}

double abs_sum_avx2(const cplx* a, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v1 = _mm256_loadu_pd(pa + 2 * i);
    __m256d v2 = _mm256_loadu_pd(pa + 2 * i + 4);
    __m256d s1 = _mm256_mul_pd(v1, v1);
    __m256d s2 = _mm256_mul_pd(v2, v2);
    // hadd gives the four |.|^2 values (lane order irrelevant for a sum)
    acc = _mm256_add_pd(acc, _mm256_sqrt_pd(_mm256_hadd_pd(s1, s2)));
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += std::abs(a[i]);
  return s;
}

double norm_sq_avx2(const cplx* a, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d v = _mm256_loadu_pd(pa + 2 * i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += std::norm(a[i]);
  return s;
}

}  // namespace

const Ops* avx2_ops() {
  static const Ops table{dot_conj_avx2, axpy_avx2, pointwise_mul_avx2,
                         abs_sum_avx2, norm_sq_avx2, "avx2"};
  return &table;
}

}  // namespace scat1d::kern

#else

namespace scat1d::kern {
const Ops* avx2_ops() { return nullptr; }
}  // namespace scat1d::kern

#endif
