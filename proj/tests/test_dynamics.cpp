#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "scat1d/dynamics.hpp"
#include "scat1d/wave_operators.hpp"

using namespace scat1d;
using namespace std::complex_literals;
using std::numbers::pi;

namespace {

SpectralDecomposition make_decomp(const PotentialSpec& spec, double xmax = 40.0,
                                  double kmax = 6.0) {
  const UniformGrid x = UniformGrid::symmetric(xmax, 0.05);
  const KGrid k = KGrid::for_domain(xmax, 1e-3, kmax);
  return build_decomposition(spec, k, x);
}

GridFunction packet(const UniformGrid& g, double k0, double x0, double sigma) {
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

TEST_CASE("evolve_linear: t = 0 equals the continuous projection") {
  PotentialSpec spec;
  spec.deltas = {{-2.0, 0.0}};
  const SpectralDecomposition d = make_decomp(spec);
  const GridFunction f = packet(d.x(), 2.0, -8.0, 2.0);
  const GridFunction u0 = evolve_linear(d, f, 0.0);
  const PcResult pc = pc_project(d, f);
  CHECK(norm_l2(u0 - pc.pcf) < 1e-12);
}

TEST_CASE("free evolution matches the Fourier multiplier oracle") {
  PotentialSpec free_spec;
  const SpectralDecomposition d = make_decomp(free_spec);
  const GridFunction f = packet(d.x(), 2.0, 0.0, 2.0);
  for (double t : {0.3, 1.1}) {
    const GridFunction u = evolve_linear(d, f, t);
    KFunction g = fourier_analysis(d.table, f);
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double k = d.k().nodes[j];
      g[j] *= std::exp(cplx{0.0, -t * k * k});
    }
    const GridFunction oracle = fourier_synthesis(d.table, g);
    CHECK(norm_l2(u - oracle) < 1e-8);
  }
}

TEST_CASE("linear propagator: unitarity on the continuous subspace, group law") {
  PotentialSpec spec;
  spec.deltas = {{-1.5, 0.0}};
  const SpectralDecomposition d = make_decomp(spec);
  GridFunction f = packet(d.x(), 2.5, -6.0, 2.0);
  const PcResult pc = pc_project(d, f);
  const double n0 = norm_l2(pc.pcf);
  // domain rule: x extent must hold the ballistic spread 2 k t
  for (double t : {0.5, 1.0, 2.0}) {
    const GridFunction u = evolve_linear(d, f, t);
    CHECK(std::abs(norm_l2(u) - n0) < 1e-6 * std::max(1.0, t));
  }
  // grid-limited at this domain size; the acceptance suite asserts 2e-6 on
  // its production grid
  const GridFunction a = evolve_linear(d, evolve_linear(d, f, 0.7), 1.6);
  const GridFunction b = evolve_linear(d, f, 2.3);
  CHECK(norm_l2(a - b) < 5e-5);
}

TEST_CASE("evolution intertwines with the wave operators") {
  PotentialSpec spec;
  spec.deltas = {{1.0, -0.5}, {-0.8, 0.75}};
  // delta locations must be grid points: 0.05 lattice holds both
  const SpectralDecomposition d = make_decomp(spec);
  const GridFunction f = packet(d.x(), 2.0, -5.0, 2.0);
  const double t = 1.4;
  const GridFunction lhs = evolve_linear(d, f, t);
  // W+ e^{-itH0} W+* f
  GridFunction g = apply_wplus_star(d, f);
  KFunction gh = fourier_analysis(d.table, g);
  for (std::size_t j = 0; j < gh.size(); ++j) {
    const double k = d.k().nodes[j];
    gh[j] *= std::exp(cplx{0.0, -t * k * k});
  }
  const GridFunction rhs = apply_wplus(d, fourier_synthesis(d.table, gh));
  CHECK(norm_l2(lhs - rhs) / norm_l2(f) < 1e-5);
}

TEST_CASE("full evolution adds bound-state phases") {
  PotentialSpec spec;
  spec.deltas = {{-2.0, 0.0}};
  const SpectralDecomposition d = make_decomp(spec);
  REQUIRE(d.bound.size() == 1);
  const GridFunction& psi = d.bound[0].state;
  const double t = 2.0;
  const GridFunction u = evolve_linear(d, psi, t, true);
  // bound state rotates by e^{+i kappa^2 t}
  const cplx expect = std::exp(cplx{0.0, t * d.bound[0].kappa * d.bound[0].kappa});
  double worst = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    worst = std::max(worst, std::abs(u[i] - expect * psi[i]));
  CHECK(worst < 1e-4);
}

TEST_CASE("dispersive decay: free Gaussian has slope -1/2") {
  PotentialSpec free_spec;
  UniformGrid g = UniformGrid::symmetric(20.0, 0.02);
  GridFunction f = packet(g, 0.0, 0.0, 1.0);
  const std::vector<double> ts{1.0, 2.0, 4.5, 10.0, 21.0, 46.0, 100.0};
  DecayOptions opts;
  opts.kmax = 5.0;
  opts.dk = 1.2e-3;
  const DecayReport rep = dispersive_decay_study(free_spec, f, ts, opts);
  CHECK(rep.slope == doctest::Approx(-0.5).epsilon(0.04));
  CHECK(rep.sup_scaled < 1.0);
  // exact free Gaussian sup decay: |u|_inf = (1 + 4 t^2 / sigma^4)^{-1/4} |u0|_inf
  const double sig = 1.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double t = ts[i];
    const double expect =
        rep.points[0].supnorm * std::pow((1.0 + 4.0 * 1.0 / (sig * sig * sig * sig)) /
                                             (1.0 + 4.0 * t * t / (sig * sig * sig * sig)),
                                         0.25);
    CHECK(rep.points[i].supnorm == doctest::Approx(expect).epsilon(5e-3));
  }
}

TEST_CASE("dispersive decay through a repulsive delta") {
  PotentialSpec spec;
  spec.deltas = {{2.0, 0.0}};
  UniformGrid g = UniformGrid::symmetric(12.0, 0.02);
  GridFunction f = packet(g, 0.0, 0.0, 0.7);
  const std::vector<double> ts{1.0, 2.2, 4.6, 10.0, 22.0, 46.0, 100.0};
  DecayOptions opts;
  opts.kmax = 6.0;
  opts.dk = 1e-3;
  const DecayReport rep = dispersive_decay_study(spec, f, ts, opts);
  CHECK(rep.slope > -0.55);
  CHECK(rep.slope < -0.45);
  CHECK(rep.sup_scaled < 1.0);
}

TEST_CASE("dispersive decay: projected double attractive well") {
  PotentialSpec spec;
  spec.deltas = {{-2.0, -1.0}, {-2.0, 1.0}};
  UniformGrid g = UniformGrid::symmetric(12.0, 0.02);
  GridFunction f = packet(g, 0.0, 0.0, 0.8);
  const std::vector<double> ts{1.0, 2.2, 4.6, 10.0, 22.0, 46.0, 100.0};
  DecayOptions opts;
  opts.kmax = 6.0;
  opts.dk = 1e-3;
  const DecayReport rep = dispersive_decay_study(spec, f, ts, opts);
  CHECK(rep.slope > -0.55);
  CHECK(rep.slope < -0.45);
  CHECK(rep.sup_scaled < 1.0);
}

TEST_CASE("resolvent sandwich: identity for free, route agreement with deltas") {
  PotentialSpec free_spec;
  const SpectralDecomposition df = make_decomp(free_spec);
  const GridFunction f = packet(df.x(), 3.0, 1.0, 2.0);
  const ResolventResult rf = resolvent_sandwich(df, f);
  CHECK(rf.norm_ratio == doctest::Approx(1.0).epsilon(5e-6));
  CHECK(norm_l2(rf.result - f) < 5e-6);

  PotentialSpec spec;
  spec.deltas = {{-1.0, -0.5}, {1.5, 0.5}};
  const SpectralDecomposition d = make_decomp(spec, 40.0, 8.0);
  // data placed clear of the singular support: (H0+1) amplifies the
  // delta-kink spectral tails of functions straddling a delta
  for (int m = 0; m < 6; ++m) {
    GridFunction ff = band_limit(d, packet(d.x(), 2.3 + 0.38 * m,
                                           6.0 + 1.5 * m, 2.2));
    const double n = norm_l2(ff);
    for (auto& v : ff.values) v /= n;
    const ResolventResult r = resolvent_sandwich(d, ff);
    CHECK(r.route_discrepancy < 1e-5);
    CHECK(r.norm_ratio < 30.0);  // (k^2+1)-weighted, band-limited: bounded
    CHECK(r.norm_ratio > 0.1);
  }
}

TEST_CASE("nls: linear limit rotates a bound state at rate kappa^2") {
  PotentialSpec spec;
  spec.deltas = {{-2.0, 0.0}};
  const SpectralDecomposition d = make_decomp(spec, 30.0, 4.0);
  REQUIRE(d.bound.size() == 1);
  GridFunction u0 = d.bound[0].state;
  const double amp = 1e-4;  // amplitude -> 0: nonlinearity negligible
  for (auto& v : u0.values) v *= amp;

  NLSConfig cfg;
  cfg.sigma = 1.0;
  cfg.sign = +1;
  cfg.dt = 0.01;
  cfg.t_final = 1.0;
  cfg.record_every = 100;
  const EvolutionTrace tr = nls_solve(d, u0, cfg);
  REQUIRE(!tr.states.empty());
  const GridFunction& uf = tr.states.back();
  const cplx expect = std::exp(cplx{0.0, 1.0 * d.bound[0].kappa * d.bound[0].kappa});
  double worst = 0.0;
  for (std::size_t i = 0; i < uf.size(); ++i)
    worst = std::max(worst, std::abs(uf[i] - expect * u0[i]) / amp);
  CHECK(worst < 1e-4);
}

TEST_CASE("nls: defocusing mass conservation and second-order convergence") {
  PotentialSpec spec;
  spec.deltas = {{-2.0, 0.0}};
  const SpectralDecomposition d = make_decomp(spec, 30.0, 8.0);
  GridFunction u0 = packet(d.x(), -2.0, -6.0, 3.0);
  for (auto& v : u0.values) v *= 0.3;

  NLSConfig cfg;
  cfg.sigma = 1.0;
  cfg.sign = +1;
  cfg.dt = 0.01;
  cfg.t_final = 2.0;
  cfg.record_every = 10;
  cfg.linear_step = LinearStep::GridEigen;  // exactly unitary substep
  const EvolutionTrace tr = nls_solve(d, u0, cfg);
  CHECK_FALSE(tr.blowup);
  CHECK_FALSE(tr.step_warning);
  const double m1 = tr.diagnostics[1].mass;
  const double mf = tr.diagnostics.back().mass;
  const double per_unit =
      std::abs(mf - m1) / (tr.diagnostics.back().t - tr.diagnostics[1].t);
  CHECK(per_unit / m1 < 1e-8);

  // energy drift bounded (reported, not conserved exactly by Strang)
  const double e1 = tr.diagnostics[1].energy;
  const double ef = tr.diagnostics.back().energy;
  CHECK(std::abs(ef - e1) < 1e-4 * std::max(1.0, std::abs(e1)));

  // dt-halving: order-2 convergence of the final state.  Strong nonlinearity
  // makes the Strang error dominate; the packet is launched clear of the
  // delta (states with kink content at the delta show the classical
  // splitting order reduction for non-smooth potentials).
  GridFunction w0 = packet(d.x(), -2.0, -14.0, 3.0);
  for (auto& v : w0.values) v *= 0.3;
  auto run = [&](double dt) {
    NLSConfig c2 = cfg;
    c2.strength = 4.0;
    c2.dt = dt;
    c2.t_final = 0.5;
    c2.record_every = 1000000;  // keep only the final state
    return nls_solve(d, w0, c2).states.back();
  };
  const GridFunction ua = run(0.02);
  const GridFunction ub = run(0.01);
  const GridFunction uref = run(0.00125);
  const double ea = norm_l2(ua - uref);
  const double eb = norm_l2(ub - uref);
  CHECK(ea / eb == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("nls: free focusing soliton translates with conserved mass") {
  PotentialSpec free_spec;
  const SpectralDecomposition d = make_decomp(free_spec, 40.0, 8.0);
  // carrier v = 2 keeps the sech spectrum away from the excluded k-window
  const double a = 1.0, v = 2.0;
  const double b = a / std::sqrt(2.0);
  GridFunction u0(d.x());
  for (std::size_t i = 0; i < d.x().n; ++i) {
    const double x = d.x()[i];
    u0[i] = a / std::cosh(b * (x + 10.0)) * std::exp(1.0i * v * x);
  }
  NLSConfig cfg;
  cfg.sigma = 1.0;
  cfg.sign = -1;  // focusing
  cfg.dt = 0.005;
  cfg.t_final = 5.0;
  cfg.record_every = 250;
  const EvolutionTrace tr = nls_solve(d, u0, cfg);
  CHECK_FALSE(tr.blowup);
  // mass conserved
  const double m1 = tr.diagnostics[1].mass;
  CHECK(tr.diagnostics.back().mass == doctest::Approx(m1).epsilon(3e-3));
  // profile translated by 2 v t
  const GridFunction& uf = tr.states.back();
  const double shift = 2.0 * v * 5.0;
  double worst = 0.0;
  for (double xq = -6.0; xq <= 6.0; xq += 0.5) {
    const std::size_t i = d.x().nearest_index(xq - 10.0 + shift);
    const double expect = a / std::cosh(b * xq);
    worst = std::max(worst, std::abs(std::abs(uf[i]) - expect));
  }
  CHECK(worst < 1e-2);
}

TEST_CASE("nls: tenfold sup growth trips the blow-up signal") {
  // a dispersed band-limited spike refocuses deterministically under the
  // linear flow; the sup passes 10x its initial value near the focus time
  PotentialSpec free_spec;
  const UniformGrid x = UniformGrid::symmetric(90.0, 0.05);
  const KGrid k = KGrid::for_domain(90.0, 1e-3, 6.0);
  const SpectralDecomposition d = build_decomposition(free_spec, k, x);
  KFunction flat(k);
  for (std::size_t j = 0; j < flat.size(); ++j) flat[j] = 1.0;
  const GridFunction spike = fourier_synthesis(d.table, flat);
  const GridFunction u0 = evolve_linear(d, spike, -5.0);
  NLSConfig cfg;
  cfg.sigma = 1.0;
  cfg.sign = -1;
  cfg.strength = 1e-6;  // essentially linear refocusing
  cfg.dt = 0.01;
  cfg.t_final = 6.0;
  cfg.record_every = 10;
  const EvolutionTrace tr = nls_solve(d, u0, cfg);
  CHECK(tr.blowup);
  CHECK(tr.times.back() < 5.5);  // stops near the focus, before t_final
}

TEST_CASE("double well: linear beat period matches the two-level prediction") {
  NLSConfig cfg;
  cfg.sigma = 1.0;
  cfg.sign = +1;
  cfg.strength = 0.0;  // linear flow
  cfg.dt = 0.02;
  cfg.t_final = 50.0;
  cfg.record_every = 5;
  const DoubleWellResult r =
      double_well_demo(2.0, 0.5, cfg, WellRecipe::OneWell, 30.0, 4.0);
  REQUIRE(r.kappas.size() == 2);
  CHECK(r.beat_period_measured > 0.0);
  CHECK(std::abs(r.beat_period_measured - r.beat_period_linear) /
            r.beat_period_linear <
        0.02);
  // the datum starts concentrated in one well
  const double l0 = r.trace.diagnostics.front().left_mass;
  const double r0 = r.trace.diagnostics.front().right_mass;
  CHECK(std::max(l0, r0) / (l0 + r0) > 0.95);
}

TEST_CASE("double well: symmetric datum keeps the masses balanced") {
  NLSConfig cfg;
  cfg.sigma = 1.0;
  cfg.sign = +1;
  cfg.strength = 0.2;
  cfg.dt = 0.02;
  cfg.t_final = 10.0;
  cfg.record_every = 10;
  const DoubleWellResult r =
      double_well_demo(2.0, 0.5, cfg, WellRecipe::Symmetric, 30.0, 4.0);
  for (const StepDiagnostics& s : r.trace.diagnostics)
    CHECK(std::abs(s.left_mass - s.right_mass) < 1e-9);
}
