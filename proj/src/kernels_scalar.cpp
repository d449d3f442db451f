#include "scat1d/kernels.hpp"

namespace scat1d::kern {
namespace {

cplx dot_conj_scalar(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

void axpy_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void pointwise_mul_scalar(const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] *= x[i];
}

double abs_sum_scalar(const cplx* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::abs(a[i]);
  return s;
}

double norm_sq_scalar(const cplx* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::norm(a[i]);
  return s;
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops table{dot_conj_scalar, axpy_scalar, pointwise_mul_scalar,
                         abs_sum_scalar, norm_sq_scalar, "scalar"};
  return table;
}

}  // namespace scat1d::kern
