#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "scat1d/spectral.hpp"
#include "scat1d/wave_operators.hpp"

using namespace scat1d;
using namespace std::complex_literals;
using std::numbers::pi;

namespace {

constexpr double kXmax = 40.0;
constexpr double kDx = 0.05;

UniformGrid test_grid() { return UniformGrid::symmetric(kXmax, kDx); }
KGrid test_kgrid() { return KGrid::for_domain(kXmax, 1e-3, 8.0); }

GridFunction modulated_gaussian(const UniformGrid& g, double k0, double x0,
                                double sigma) {
  GridFunction f(g);
  for (std::size_t i = 0; i < g.n; ++i) {
    const double x = g[i];
    f[i] = std::exp(-0.5 * (x - x0) * (x - x0) / (sigma * sigma)) *
           std::exp(1.0i * k0 * x);
  }
  const double n = norm_l2(f);
  for (auto& v : f.values) v /= n;
  return f;
}

}  // namespace

TEST_CASE("KGrid bands exclude zero and mirror cleanly") {
  const KGrid k = KGrid::symmetric_band(1e-3, 4.0, 0.05);
  CHECK(k.size() > 0);
  CHECK(k.size() % 2 == 0);
  for (double v : k.nodes) CHECK(std::abs(v) >= 1e-3);
  for (std::size_t j = 0; j < k.size(); ++j) {
    CHECK(k.nodes[j] == -k.nodes[k.mirror(j)]);
    if (j) CHECK(k.nodes[j] > k.nodes[j - 1]);
  }
  CHECK(k.nodes.back() <= 4.0);
}

TEST_CASE("free table: psi is the plane wave and F+ is the unitary transform") {
  PotentialSpec free_spec;
  const UniformGrid x = test_grid();
  const KGrid k = test_kgrid();
  const DistortedWaveTable t = build_distorted_waves(free_spec, k, x);
  std::vector<cplx> row(x.n);
  for (std::size_t j = 0; j < k.size(); j += 97) {
    t.plane_row(j, row.data());
    for (std::size_t i = 0; i < x.n; i += 211)
      CHECK(std::abs(t.psi_at(j, i) - row[i]) < 1e-12);
  }

  // P_c = identity on band-limited data
  const GridFunction f = modulated_gaussian(x, 3.0, 1.0, 2.0);
  const SpectralDecomposition d = build_decomposition(free_spec, k, x);
  const PcResult pc = pc_project(d, f);
  CHECK(norm_l2(pc.pcf - f) < 1e-8);
  CHECK(pc.route_discrepancy < 1e-8);
  CHECK(pc.ok);
}

TEST_CASE("single delta: far-field coefficient of e+ is T") {
  PotentialSpec spec;
  spec.deltas = {{2.0, 0.0}};
  const double k = 1.7;
  const TRPoint tr = scattering_point(spec, k);
  DistortedWaveTable t =
      build_distorted_waves(spec, KGrid::symmetric_band(0.5, 3.0, 0.1),
                            UniformGrid::symmetric(10.0, 0.1));
  for (double x : {1.0, 3.7, 8.4}) {
    const cplx psi = psi_plus(t, x, k) * std::sqrt(2.0 * pi);
    const cplx expect = tr.T * std::exp(1.0i * k * x);
    CHECK(std::abs(psi - expect) < 1e-13);
  }
  // left of the delta: e^{ikx} + R2 e^{-ikx}
  for (double x : {-1.0, -5.2}) {
    const cplx psi = psi_plus(t, x, k) * std::sqrt(2.0 * pi);
    const cplx expect = std::exp(1.0i * k * x) + tr.R2 * std::exp(-1.0i * k * x);
    CHECK(std::abs(psi - expect) < 1e-13);
  }
  // k < 0 branch uses e_-(x, -k)
  const cplx psim = psi_plus(t, 2.0, -k) * std::sqrt(2.0 * pi);
  const cplx em = tr.R1 * std::exp(1.0i * k * 2.0) + std::exp(-1.0i * k * 2.0);
  CHECK(std::abs(psim - em) < 1e-13);
}

TEST_CASE("Lippmann-Schwinger residual for a single delta") {
  // e_+(x) = e^{ikx} - c e_+(y0) e^{ik|x-y0|} / (2ik)
  PotentialSpec spec;
  spec.deltas = {{1.3, 0.4}};
  DistortedWaveTable t =
      build_distorted_waves(spec, KGrid::symmetric_band(0.5, 3.0, 0.1),
                            UniformGrid::symmetric(10.0, 0.1));
  const double k = 2.1, y0 = 0.4, c = 1.3;
  const double s2p = std::sqrt(2.0 * pi);
  const cplx ey0 = psi_plus(t, y0, k) * s2p;
  for (double x : {-3.0, -0.2, 0.4, 1.1, 6.0}) {
    const cplx e = psi_plus(t, x, k) * s2p;
    const cplx rhs = std::exp(1.0i * k * x) +
                     c * ey0 * std::exp(1.0i * k * std::abs(x - y0)) / (2.0i * k);
    CHECK(std::abs(e - rhs) < 1e-12);
  }
}

TEST_CASE("transfer-matrix and Jost construction paths agree") {
  PotentialSpec spec;
  spec.deltas = {{-1.5, -0.5}, {0.8, 1.0}};
  const UniformGrid x = UniformGrid::symmetric(12.0, 0.05);
  const KGrid k = KGrid::symmetric_band(0.2, 4.0, 0.1);
  const DistortedWaveTable tm = build_distorted_waves(spec, k, x,
                                                      WaveSource::TransferMatrix);
  const DistortedWaveTable js = build_distorted_waves(spec, k, x, WaveSource::Jost);
  double worst = 0.0;
  for (std::size_t j = 0; j < k.size(); ++j)
    for (std::size_t i = 0; i < x.n; ++i)
      worst = std::max(worst, std::abs(tm.psi_at(j, i) - js.psi_at(j, i)));
  CHECK(worst < 1e-8);
}

TEST_CASE("weak eigenvalue equation and jump condition on the grid") {
  PotentialSpec spec;
  spec.deltas = {{2.0, 0.0}};
  const UniformGrid x = UniformGrid::symmetric(10.0, 0.01);
  const KGrid k = KGrid::symmetric_band(0.5, 3.0, 0.25);
  const DistortedWaveTable t = build_distorted_waves(spec, k, x);
  const std::size_t j = k.size() - 1;  // largest k node
  const double kj = k.nodes[j];
  // second difference reproduces k^2 psi away from the delta
  for (std::size_t i = 2; i + 2 < x.n; i += 17) {
    if (std::abs(x[i]) < 3.0 * x.dx) continue;
    const cplx dd = (t.psi_at(j, i + 1) - 2.0 * t.psi_at(j, i) + t.psi_at(j, i - 1)) /
                    (x.dx * x.dx);
    CHECK(std::abs(-dd - kj * kj * t.psi_at(j, i)) < 5e-3 * std::abs(kj * kj));
  }
  // jump condition at the delta: psi'(0+) - psi'(0-) = c psi(0)
  const std::size_t i0 = x.nearest_index(0.0);
  auto v = [&](std::size_t i) { return t.psi_at(j, i); };
  const cplx dplus =
      (-3.0 * v(i0) + 4.0 * v(i0 + 1) - v(i0 + 2)) / (2.0 * x.dx);
  const cplx dminus =
      (3.0 * v(i0) - 4.0 * v(i0 - 1) + v(i0 - 2)) / (2.0 * x.dx);
  CHECK(std::abs((dplus - dminus) - 2.0 * v(i0)) < 1e-3);
}

TEST_CASE("adjointness and Parseval on the continuous range") {
  PotentialSpec spec;
  spec.deltas = {{-2.0, 0.0}};  // one bound state
  const UniformGrid x = test_grid();
  const KGrid k = test_kgrid();
  const SpectralDecomposition d = build_decomposition(spec, k, x);
  REQUIRE(d.bound.size() == 1);

  const GridFunction f = modulated_gaussian(x, 2.0, -14.0, 2.0);
  const GridFunction g = modulated_gaussian(x, -3.0, 13.0, 1.5);

  // <F+ f, g>_k = <f, F+^* g>_x to near round-off (same quadrature weights)
  const KFunction Ff = distorted_ft(d.table, f);
  const KFunction Fg = distorted_ft(d.table, g);
  cplx lhs{0.0, 0.0};
  for (std::size_t j = 0; j < Ff.size(); ++j)
    lhs += std::conj(Ff[j]) * Fg[j] * k.dk;
  const cplx rhs = inner(f, distorted_ft_adjoint(d.table, Fg));
  CHECK(std::abs(lhs - rhs) < 1e-12);

  // Parseval on the P_c range
  const PcResult pf = pc_project(d, f);
  const double n1 = norm_l2(pf.pcf);
  const KFunction Fpf = distorted_ft(d.table, pf.pcf);
  CHECK(norm_l2(Fpf) == doctest::Approx(n1).epsilon(1e-6));

  // F_+ annihilates the bound state
  const KFunction Fb = distorted_ft(d.table, d.bound[0].state);
  CHECK(norm_l2(Fb) < 1e-5);
}

TEST_CASE("pc_project: idempotence, self-adjointness, completeness") {
  PotentialSpec spec;
  spec.deltas = {{-2.0, 0.0}};
  const UniformGrid x = test_grid();
  const KGrid k = test_kgrid();
  const SpectralDecomposition d = build_decomposition(spec, k, x);

  // data kept clear of the delta: P_c f of a function with f(0) != 0 carries
  // a kink whose representation needs k-content ~ c f(0)/k^2 past any finite
  // band (see the truncation-signal case below)
  const GridFunction f = modulated_gaussian(x, 2.0, -15.0, 2.0);
  const GridFunction g = modulated_gaussian(x, 1.5, 12.0, 2.5);

  const PcResult p1 = pc_project(d, f);
  CHECK(p1.ok);
  CHECK(p1.route_discrepancy < 1e-5);

  const PcResult p2 = pc_project(d, p1.pcf);
  CHECK(norm_l2(p2.pcf - p1.pcf) / norm_l2(f) < 1e-6);

  // self-adjointness on grid inner products
  const PcResult pg = pc_project(d, g);
  CHECK(std::abs(inner(p1.pcf, g) - inner(f, pg.pcf)) < 1e-8);

  // bound state is annihilated
  const PcResult pb = pc_project(d, d.bound[0].state);
  CHECK(norm_l2(pb.pcf) < 1e-4);

  // completeness: P_c + |psi><psi| = identity on band-limited data
  GridFunction recon = p1.pcf;
  const cplx cb = inner(d.bound[0].state, f);
  for (std::size_t i = 0; i < recon.size(); ++i)
    recon[i] += cb * d.bound[0].state[i];
  CHECK(norm_l2(recon - f) / norm_l2(f) < 1e-4);
}

TEST_CASE("pc_project flags k-band inadequacy for data sitting on the delta") {
  PotentialSpec spec;
  spec.deltas = {{-2.0, 0.0}};
  const UniformGrid x = test_grid();
  const KGrid k = test_kgrid();
  const SpectralDecomposition d = build_decomposition(spec, k, x);
  const GridFunction f = modulated_gaussian(x, 2.0, 0.5, 2.0);
  const PcResult pc = pc_project(d, f);
  CHECK_FALSE(pc.ok);  // discrepancy-too-large signal
  CHECK(pc.route_discrepancy > 1e-4);
  CHECK(pc.route_discrepancy < 0.05);
}

TEST_CASE("free distorted transform reduces to the Fourier transform") {
  PotentialSpec free_spec;
  const UniformGrid x = test_grid();
  const KGrid k = test_kgrid();
  const DistortedWaveTable t = build_distorted_waves(free_spec, k, x);
  const GridFunction f = modulated_gaussian(x, 3.0, 0.0, 1.5);
  const KFunction a = distorted_ft(t, f);
  const KFunction b = fourier_analysis(t, f);
  // the distorted pair carries the band-edge taper; the plane pair does not
  for (std::size_t j = 0; j < a.size(); ++j)
    CHECK(std::abs(a[j] - t.band_taper[j] * b[j]) < 1e-12);
}
