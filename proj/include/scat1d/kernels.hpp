#pragma once

// Data-parallel inner loops for the transform and quadrature layers.
// Scalar reference implementations always exist; an AVX2 variant is
// selected at runtime when the CPU supports it.  Both variants are
// equivalence-tested against each other (tests/test_kernels.cpp).

#include <complex>
#include <cstddef>
#include <string_view>

namespace scat1d::kern {

using cplx = std::complex<double>;

struct Ops {
  // sum_i conj(a[i]) * b[i]
  cplx (*dot_conj)(const cplx* a, const cplx* b, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
  // y[i] *= x[i]
  void (*pointwise_mul)(const cplx* x, cplx* y, std::size_t n);
  // sum_i |a[i]|
  double (*abs_sum)(const cplx* a, std::size_t n);
  // sum_i |a[i]|^2
  double (*norm_sq)(const cplx* a, std::size_t n);
  const char* name;
};

// Reference implementation (always available).
const Ops& scalar_ops();

// AVX2 implementation, or nullptr when not compiled in / not supported.
const Ops* avx2_ops();

// Runtime-selected implementation.  Honors the SCAT1D_SIMD environment
// variable ("scalar" or "avx2") on first use.
const Ops& ops();

// Name of the active variant ("scalar", "avx2").
std::string_view active_isa();

// Test hook: override the active variant. Throws std::invalid_argument for
// unknown names and std::runtime_error if the variant is unavailable.
void force_isa(std::string_view name);

// Convenience forwarding wrappers.
inline cplx dot_conj(const cplx* a, const cplx* b, std::size_t n) {
  return ops().dot_conj(a, b, n);
}
inline void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  ops().axpy(alpha, x, y, n);
}
inline void pointwise_mul(const cplx* x, cplx* y, std::size_t n) {
  ops().pointwise_mul(x, y, n);
}
inline double abs_sum(const cplx* a, std::size_t n) { return ops().abs_sum(a, n); }
inline double norm_sq(const cplx* a, std::size_t n) { return ops().norm_sq(a, n); }

}  // namespace scat1d::kern
