#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>
#include <vector>

#include "scat1d/kernels.hpp"

using scat1d::kern::cplx;

namespace {

std::vector<cplx> random_vec(std::size_t n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& z : v) z = cplx{u(rng), u(rng)};
  return v;
}

}  // namespace

TEST_CASE("scalar dot_conj matches a hand-computed case") {
  std::vector<cplx> a{{1.0, 2.0}, {0.0, -1.0}};
  std::vector<cplx> b{{3.0, 0.0}, {1.0, 1.0}};
  // conj(1+2i)*3 + conj(-i)*(1+i) = (3-6i) + (i)(1+i)... = (3-6i) + (-1+i)
  const cplx expect{2.0, -5.0};
  const cplx got = scat1d::kern::scalar_ops().dot_conj(a.data(), b.data(), 2);
  CHECK(std::abs(got - expect) < 1e-15);
}

TEST_CASE("axpy and pointwise_mul reference behavior") {
  const auto& ops = scat1d::kern::scalar_ops();
  std::vector<cplx> x{{1.0, 0.0}, {0.0, 1.0}, {2.0, -1.0}};
  std::vector<cplx> y{{0.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}};
  ops.axpy(cplx{0.0, 1.0}, x.data(), y.data(), 3);
  CHECK(std::abs(y[0] - cplx{0.0, 1.0}) < 1e-15);
  CHECK(std::abs(y[1] - cplx{0.0, 0.0}) < 1e-15);
  CHECK(std::abs(y[2] - cplx{1.0, 2.0}) < 1e-15);

  std::vector<cplx> z{{2.0, 0.0}, {0.0, -1.0}, {1.0, 1.0}};
  ops.pointwise_mul(x.data(), z.data(), 3);
  CHECK(std::abs(z[0] - cplx{2.0, 0.0}) < 1e-15);
  CHECK(std::abs(z[1] - cplx{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(z[2] - cplx{3.0, 1.0}) < 1e-15);
}

TEST_CASE("avx2 variant agrees with the scalar reference on random data") {
  const auto* avx = scat1d::kern::avx2_ops();
  if (!avx) {
    MESSAGE("avx2 variant not built; skipping equivalence");
    return;
  }
  const auto& ref = scat1d::kern::scalar_ops();
  std::mt19937 rng(12345);
  // odd lengths exercise the scalar tails
  for (std::size_t n : {1u, 2u, 3u, 7u, 16u, 33u, 255u, 1024u, 1023u}) {
    auto a = random_vec(n, rng);
    auto b = random_vec(n, rng);

    const cplx d0 = ref.dot_conj(a.data(), b.data(), n);
    const cplx d1 = avx->dot_conj(a.data(), b.data(), n);
    CHECK(std::abs(d0 - d1) <= 1e-12 * (1.0 + std::abs(d0)));

    CHECK(ref.abs_sum(a.data(), n) ==
          doctest::Approx(avx->abs_sum(a.data(), n)).epsilon(1e-12));
    CHECK(ref.norm_sq(a.data(), n) ==
          doctest::Approx(avx->norm_sq(a.data(), n)).epsilon(1e-12));

    auto y0 = b, y1 = b;
    const cplx alpha{0.37, -1.21};
    ref.axpy(alpha, a.data(), y0.data(), n);
    avx->axpy(alpha, a.data(), y1.data(), n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(y0[i] - y1[i]) <= 1e-13);

    auto z0 = b, z1 = b;
    ref.pointwise_mul(a.data(), z0.data(), n);
    avx->pointwise_mul(a.data(), z1.data(), n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(z0[i] - z1[i]) <= 1e-13);
  }
}

TEST_CASE("dispatch honors force_isa") {
  scat1d::kern::force_isa("scalar");
  CHECK(scat1d::kern::active_isa() == "scalar");
  if (scat1d::kern::avx2_ops()) {
    scat1d::kern::force_isa("avx2");
    CHECK(scat1d::kern::active_isa() == "avx2");
  }
  CHECK_THROWS_AS(scat1d::kern::force_isa("sse9"), std::invalid_argument);
}
