#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "scat1d/fft.hpp"
#include "scat1d/grid.hpp"
#include "scat1d/quadrature.hpp"

using namespace scat1d;
using std::numbers::pi;

TEST_CASE("adaptive quadrature: polynomials and oscillatory integrands") {
  auto r1 = integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0);
  CHECK(r1.converged);
  CHECK(r1.value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  auto r2 = integrate_adaptive([](double x) { return std::sin(40.0 * x); }, 0.0, pi);
  CHECK(r2.converged);
  CHECK(r2.value == doctest::Approx((1.0 - std::cos(40.0 * pi)) / 40.0).epsilon(1e-10));

  // exp decay on a wide interval
  auto r3 = integrate_adaptive([](double x) { return std::exp(-std::abs(x)); },
                               -40.0, 40.0, {0.0}, 1e-12, 1e-10, 50);
  CHECK(r3.value == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("quadrature breakpoints handle corners") {
  auto f = [](double x) { return x < 0.5 ? 1.0 : 0.0; };
  auto r = integrate_adaptive(f, 0.0, 1.0, {0.5});
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("dft round trip and delta spectrum") {
  std::vector<cplx> v(16, cplx{0.0, 0.0});
  v[3] = cplx{1.0, 0.0};
  auto w = v;
  dft(w, -1);
  for (std::size_t j = 0; j < w.size(); ++j)
    CHECK(std::abs(w[j]) == doctest::Approx(1.0).epsilon(1e-12));
  idft_normalized(w);
  for (std::size_t j = 0; j < w.size(); ++j)
    CHECK(std::abs(w[j] - v[j]) < 1e-13);
}

TEST_CASE("fft_freqs layout") {
  auto k = fft_freqs(8, 0.5);
  const double dk = 2.0 * pi / 4.0;
  CHECK(k[0] == 0.0);
  CHECK(k[1] == doctest::Approx(dk));
  CHECK(k[4] == doctest::Approx(-4.0 * dk));
  CHECK(k[7] == doctest::Approx(-dk));
}

TEST_CASE("grid functions: norms, inner products, kink corrections") {
  UniformGrid g = UniformGrid::symmetric(10.0, 0.05);
  CHECK(g.has_point(0.0));
  CHECK(g[g.nearest_index(0.0)] == doctest::Approx(0.0));

  GridFunction f(g);
  for (std::size_t i = 0; i < g.n; ++i) {
    const double x = g[i];
    f[i] = std::exp(-x * x);
  }
  // ||e^{-x^2}||_2^2 = sqrt(pi/2)
  CHECK(norm_l2(f) == doctest::Approx(std::pow(pi / 2.0, 0.25)).epsilon(1e-10));

  // kink correction: u = e^{-|x|}, [u'](0) = -2, trapezoid alone misses
  // h^2/12 * [d|u|^2/dx] = h^2/12 * (-4)
  GridFunction u(g);
  for (std::size_t i = 0; i < g.n; ++i) u[i] = std::exp(-std::abs(g[i]));
  const double uncorrected = norm_l2(u);
  u.kinks.push_back(Kink{g.nearest_index(0.0), cplx{-2.0, 0.0}});
  const double corrected = norm_l2(u);
  // exact norm^2 = 1
  CHECK(std::abs(corrected - 1.0) < std::abs(uncorrected - 1.0) / 50.0);
  CHECK(corrected == doctest::Approx(1.0).epsilon(1e-6));
}
