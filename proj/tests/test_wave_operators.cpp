#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "scat1d/quadrature.hpp"
#include "scat1d/wave_operators.hpp"

using namespace scat1d;
using namespace std::complex_literals;
using std::numbers::pi;

namespace {

SpectralDecomposition make_decomp(const PotentialSpec& spec, double xmax = 40.0,
                                  double kmax = 8.0) {
  const UniformGrid x = UniformGrid::symmetric(xmax, 0.05);
  const KGrid k = KGrid::for_domain(xmax, 1e-3, kmax);
  return build_decomposition(spec, k, x);
}

GridFunction normalized(const SpectralDecomposition& d, GridFunction f) {
  f = band_limit(d, f);
  const double n = norm_l2(f);
  for (auto& v : f.values) v /= n;
  return f;
}

}  // namespace

TEST_CASE("hilbert transform: cos -> sin, involution, constants to zero") {
  UniformGrid g = UniformGrid::symmetric(20.0, 0.02);
  GridFunction f(g);
  // windowed cos: H(cos kx) = sin(kx) in the window interior
  const double k0 = 2.0;
  for (std::size_t i = 0; i < g.n; ++i) {
    const double x = g[i];
    const double win = std::exp(-0.5 * x * x / 25.0);
    f[i] = win * std::cos(k0 * x);
  }
  const GridFunction hf = hilbert_transform(f);
  for (double x : {-3.0, -1.2, 0.4, 2.8}) {
    const std::size_t i = g.nearest_index(x);
    const double win = std::exp(-0.5 * x * x / 25.0);
    CHECK(hf[i].real() == doctest::Approx(win * std::sin(k0 * x)).epsilon(2e-3));
  }
  // H(H f) = -f for grid-mean-zero data (exact multiplier algebra)
  cplx mean{0.0, 0.0};
  for (const cplx& v : f.values) mean += v;
  mean /= static_cast<double>(f.size());
  for (auto& v : f.values) v -= mean;
  const GridFunction hhf = hilbert_transform(hilbert_transform(f));
  double worst = 0.0;
  for (std::size_t i = 0; i < g.n; ++i)
    worst = std::max(worst, std::abs(hhf[i] + f[i]));
  CHECK(worst < 1e-12);
  // unitarity on mean-zero data
  CHECK(norm_l2(hf) == doctest::Approx(norm_l2(f)).epsilon(1e-9));

  GridFunction c(g);
  for (auto& v : c.values) v = 1.0;
  const GridFunction hc = hilbert_transform(c);
  CHECK(norm_sup(hc) < 1e-10);  // sgn(0) = 0 kills the mean
}

TEST_CASE("frequency cutoff profile and split partition") {
  FrequencyCutoff psi{1.5};
  CHECK(psi(0.3) == 1.0);
  CHECK(psi(1.5) == 1.0);
  CHECK(psi(3.0) == 0.0);
  CHECK(psi(-3.1) == 0.0);
  CHECK(psi(2.25) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(psi(1.8) > psi(2.2));  // monotone transition

  UniformGrid g = UniformGrid::symmetric(30.0, 0.05);
  GridFunction f(g);
  for (std::size_t i = 0; i < g.n; ++i) {
    const double x = g[i];
    // spectrum concentrated at k = 0.5, width 0.2: well inside the cutoff
    f[i] = std::exp(-x * x / 50.0) * std::exp(1.0i * 0.5 * x);
  }
  auto [low, high] = frequency_split(f, psi);
  // pure low mode: f_low = f
  double worst = 0.0;
  for (std::size_t i = 0; i < g.n; ++i)
    worst = std::max(worst, std::abs(low[i] - f[i]));
  CHECK(worst < 1e-4);
  // re-sum is exact by construction (up to float cancellation)
  for (std::size_t i = 0; i < g.n; i += 71)
    CHECK(std::abs(low[i] + high[i] - f[i]) < 1e-14);

  // k0 above the grid Nyquist: low = f
  FrequencyCutoff wide{2.0 * pi / g.dx};
  auto [low2, high2] = frequency_split(f, wide);
  CHECK(norm_sup(high2) < 1e-12);
}

TEST_CASE("parity reverses a symmetric grid") {
  UniformGrid g = UniformGrid::symmetric(4.0, 0.5);
  GridFunction f(g);
  for (std::size_t i = 0; i < g.n; ++i) f[i] = g[i] + 1.0;  // odd plus const
  const GridFunction pf = parity(f);
  for (std::size_t i = 0; i < g.n; ++i)
    CHECK(std::abs(pf[i] - (-g[i] + 1.0)) < 1e-14);
}

TEST_CASE("wave operator identities on a band-limited family") {
  PotentialSpec spec;
  spec.deltas = {{-2.0, 0.0}};
  const SpectralDecomposition d = make_decomp(spec);
  auto fam = probe_family(d.x(), 0.7, 6.0, 8, 515);
  double worst_iso = 0.0, worst_wsw = 0.0, worst_wws = 0.0, worst_adj = 0.0;
  for (std::size_t m = 0; m < fam.size(); ++m) {
    const GridFunction f = normalized(d, fam[m]);
    const GridFunction wf = apply_wplus(d, f);
    worst_iso = std::max(worst_iso, std::abs(norm_l2(wf) - 1.0));
    worst_wsw = std::max(worst_wsw, norm_l2(apply_wplus_star(d, wf) - f));
    const GridFunction wws = apply_wplus(d, apply_wplus_star(d, f));
    worst_wws = std::max(worst_wws, norm_l2(wws - pc_project(d, f).pcf));
    const GridFunction g = normalized(d, fam[(m + 3) % fam.size()]);
    worst_adj = std::max(
        worst_adj, std::abs(inner(wf, g) - inner(f, apply_wplus_star(d, g))));
  }
  // the acceptance suite asserts 1e-5 on its production grid (xmax = 120);
  // this compact grid documents the xmax-limited accuracy
  CHECK(worst_iso < 1e-5);
  CHECK(worst_wsw < 5e-5);
  CHECK(worst_wws < 1e-4);
  CHECK(worst_adj < 1e-12);
}

TEST_CASE("free potential: W+ is the identity") {
  PotentialSpec free_spec;
  const SpectralDecomposition d = make_decomp(free_spec);
  auto fam = probe_family(d.x(), 0.7, 6.0, 2, 99);
  const GridFunction f = normalized(d, fam[0]);
  CHECK(norm_l2(apply_wplus(d, f) - f) < 1e-7);
  CHECK(norm_l2(apply_wplus_star(d, f) - f) < 1e-7);
  CHECK(sobolev_ratio(d, 2.0, std::span<const GridFunction>(&f, 1)) ==
        doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("W+* annihilates bound states") {
  PotentialSpec spec;
  spec.deltas = {{-2.0, 0.0}};
  const SpectralDecomposition d = make_decomp(spec);
  REQUIRE(d.bound.size() == 1);
  const GridFunction ws = apply_wplus_star(d, d.bound[0].state);
  CHECK(norm_l2(ws) < 1e-5);
}

TEST_CASE("sj_kernel matches B1 and the brute-force operator oracle") {
  PotentialSpec spec;
  spec.regular = RegularPart::box(0.5, 0.0, 1.0);
  UniformGrid g = UniformGrid::symmetric(3.0, 0.0025);
  const B1Result br = b1_from_m1(solve_jost(spec, uniform_k_grid(16.0, 256), g));
  const KernelOperator op = sj_kernel(br.kernel, 1);

  // kernel value identity A(x, y) = B1(x, (y-x)/2)
  const std::size_t xi = g.nearest_index(-0.5);
  const std::size_t yi = g.nearest_index(0.7);
  const double z = 0.5 * (g[yi] - g[xi]);
  const double tz = z / br.kernel.dy;
  {
    const auto m0 = static_cast<std::size_t>(tz);
    const double fr = tz - static_cast<double>(m0);
    const cplx expect =
        (1.0 - fr) * br.kernel.at(xi, m0) + fr * br.kernel.at(xi, m0 + 1);
    CHECK(std::abs(op.at(xi, yi) - expect) < 1e-12);
  }

  // zero potential gives the zero kernel
  PotentialSpec free_spec;
  const B1Result bz =
      b1_from_m1(solve_jost(free_spec, uniform_k_grid(8.0, 64),
                            UniformGrid::symmetric(2.0, 0.125)));
  const KernelOperator zop = sj_kernel(bz.kernel, 1);
  CHECK(young_constant(zop) == 0.0);

  // S1 applied to a Gaussian vs direct quadrature of the interpolated kernel
  GridFunction phi(g);
  for (std::size_t i = 0; i < g.n; ++i)
    phi[i] = std::exp(-2.0 * (g[i] - 0.4) * (g[i] - 0.4));
  const GridFunction s1 = apply_kernel(op, phi);
  for (double xq : {-1.0, 0.0, 0.5}) {
    const std::size_t i = g.nearest_index(xq);
    auto integrand = [&](double y) {
      const double zz = 0.5 * (y - g[i]);
      const double t = zz / br.kernel.dy;
      const auto m0 = static_cast<std::size_t>(t);
      if (m0 + 1 >= br.kernel.y.size()) return 0.0;
      const double fr = t - static_cast<double>(m0);
      const double b = (1.0 - fr) * br.kernel.at(i, m0).real() +
                       fr * br.kernel.at(i, m0 + 1).real();
      return b * std::exp(-2.0 * (y - 0.4) * (y - 0.4));
    };
    const double oracle = integrate_or_throw(integrand, g[i], g.back(), {}, 1e-10, 1e-9);
    CHECK(std::abs(s1[i].real() - oracle) < 1e-6);
    CHECK(std::abs(s1[i].imag()) < 1e-6);
  }
}

TEST_CASE("young constant: zero, row-stochastic, and the B1 chain") {
  KernelOperator zero;
  zero.rows = UniformGrid{0.0, 0.1, 11};
  zero.cols = zero.rows;
  zero.a.assign(121, cplx{0.0, 0.0});
  CHECK(young_constant(zero) == 0.0);

  // constant kernel on the unit square: both sups equal 1, C_A = 2
  KernelOperator unit;
  unit.rows = UniformGrid{0.0, 1.0 / 10.0, 11};
  unit.cols = unit.rows;
  unit.a.assign(121, cplx{1.0, 0.0});
  CHECK(young_constant(unit) == doctest::Approx(2.2).epsilon(1e-12));
  // (11 nodes x 0.1 spacing = 1.1: discrete Riemann row mass)

  // C_{S1} <= K ||V_reg||_{L1_gamma}, K refinement-stable
  double k_prev = 0.0;
  for (double dxg : {0.04, 0.02}) {
    PotentialSpec spec;
    spec.regular = RegularPart::box(0.5, 0.0, 1.0);
    UniformGrid g = UniformGrid::symmetric(3.0, dxg);
    const B1Result br =
        b1_from_m1(solve_jost(spec, uniform_k_grid(16.0, 256), g));
    const double c = young_constant(sj_kernel(br.kernel, 1));
    const double nrm = weighted_l1_norm(spec, 1.6);
    const double K = c / nrm;
    CHECK(std::isfinite(K));
    CHECK(K > 0.0);
    if (k_prev != 0.0) CHECK(std::abs(K - k_prev) / k_prev < 0.1);
    k_prev = K;
  }
}

TEST_CASE("sobolev_ratio: p <= 1 rejected, stable for a delta potential") {
  PotentialSpec spec;
  spec.deltas = {{2.0, 0.0}};
  const SpectralDecomposition d = make_decomp(spec);
  auto fam = probe_family(d.x(), 0.7, 6.0, 10, 404);
  std::vector<GridFunction> nfam;
  for (auto& f : fam) nfam.push_back(normalized(d, f));

  CHECK_THROWS_AS(sobolev_ratio(d, 1.0, nfam), std::invalid_argument);

  const double r2 = sobolev_ratio(d, 2.0, nfam);
  CHECK(std::isfinite(r2));
  CHECK(r2 > 0.5);
  CHECK(r2 < 10.0);
  // enlarging the family can only grow the sup, and not by much
  const double r2_half = sobolev_ratio(
      d, 2.0, std::span<const GridFunction>(nfam.data(), 5));
  CHECK(r2 >= r2_half);
  CHECK(r2 - r2_half < 0.25 * r2_half + 1e-12);
}

TEST_CASE("intertwining residuals") {
  PotentialSpec spec;
  spec.deltas = {{-1.5, -0.5}, {1.0, 0.5}};
  const SpectralDecomposition d = make_decomp(spec);
  auto fam = probe_family(d.x(), 0.7, 6.0, 2, 31);
  const GridFunction f = normalized(d, fam[0]);

  // borel = 1 reduces to the ww-star identity
  const double r1 = intertwining_check(d, f, [](double) { return cplx{1.0, 0.0}; });
  CHECK(r1 < 1e-4);
  const double r2 = intertwining_check(
      d, f, [](double lam) { return std::exp(cplx{0.0, -lam}); });
  CHECK(r2 < 1e-4);
  const double r3 = intertwining_check(
      d, f, [](double lam) { return cplx{1.0 / (lam + 1.0), 0.0}; });
  CHECK(r3 < 1e-4);

  // free case: exactly intertwining for any borel function
  PotentialSpec free_spec;
  const SpectralDecomposition df = make_decomp(free_spec);
  const GridFunction ff = normalized(df, fam[1]);
  const double rf = intertwining_check(
      df, ff, [](double lam) { return std::exp(cplx{0.0, -0.7 * lam}); });
  CHECK(rf < 1e-7);
}

TEST_CASE("six-term low-frequency reassembly matches W+") {
  PotentialSpec spec;
  spec.deltas = {{2.0, 0.0}};
  const SpectralDecomposition d = make_decomp(spec);
  auto fam = probe_family(d.x(), 0.7, 6.0, 2, 808);
  const GridFunction f = normalized(d, fam[0]);
  const double resid = six_term_lowpass_residual(d, f, 2.5);
  CHECK(resid < 1e-10);
}
