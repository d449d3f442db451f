#include "scat1d/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <memory>
#include <stdexcept>

#include <gsl/gsl_eigen.h>
#include <gsl/gsl_matrix.h>
#include <gsl/gsl_vector.h>

#include "scat1d/delta_scattering.hpp"
#include "scat1d/kernels.hpp"
#include "scat1d/wave_operators.hpp"

namespace scat1d {

using namespace std::complex_literals;
using std::numbers::pi;

GridFunction evolve_linear(const SpectralDecomposition& d, const GridFunction& f,
                           double t, bool include_bound) {
  KFunction g = distorted_ft(d.table, f);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double k = d.k().nodes[j];
    g[j] *= std::exp(cplx{0.0, -t * k * k});
  }
  GridFunction u = distorted_ft_adjoint(d.table, g);
  if (include_bound) {
    for (const BoundStateOnGrid& b : d.bound) {
      const cplx c = inner(b.state, f) * std::exp(cplx{0.0, t * b.kappa * b.kappa});
      for (std::size_t i = 0; i < u.size(); ++i) u[i] += c * b.state[i];
    }
    attach_delta_kinks(d.spec(), u);
  }
  return u;
}

DecayReport dispersive_decay_study(const PotentialSpec& spec, const GridFunction& f,
                                   std::span<const double> t_list,
                                   const DecayOptions& opts) {
  if (!spec.pure_delta())
    throw std::invalid_argument("dispersive_decay_study: pure-delta specs only");

  // midpoint k nodes, +-(j+1/2) dk up to kmax; closed-form waves throughout
  const auto m = static_cast<std::size_t>(std::floor(opts.kmax / opts.dk));
  std::vector<double> knodes(2 * m);
  for (std::size_t j = 0; j < m; ++j) {
    const double k = (static_cast<double>(j) + 0.5) * opts.dk;
    knodes[m + j] = k;
    knodes[m - 1 - j] = -k;
  }

  std::vector<double> locs;
  for (const DeltaTerm& dt : spec.deltas) locs.push_back(dt.location);

  // Psi_+ node coefficients regrouped per spatial interval:
  // Psi_+(x, k_j) = (A[I(x)][j] e^{i|k_j|x} + B[I(x)][j] e^{-i|k_j|x})/sqrt(2pi)
  const std::size_t nint = locs.size() + 1;
  const std::size_t nk = knodes.size();
  std::vector<std::vector<cplx>> coefA(nint, std::vector<cplx>(nk));
  std::vector<std::vector<cplx>> coefB(nint, std::vector<cplx>(nk));
  for (std::size_t j = 0; j < nk; ++j) {
    const double k = knodes[j];
    const PlaneWaveCoefficients cf =
        k >= 0.0 ? eplus_coefficients(spec, k) : eminus_coefficients(spec, -k);
    for (std::size_t I = 0; I < nint; ++I) {
      coefA[I][j] = cf.A[I];
      coefB[I][j] = cf.B[I];
    }
  }
  const double norm = 1.0 / std::sqrt(2.0 * pi);
  auto interval_of = [&](double x) {
    return static_cast<std::size_t>(
        std::upper_bound(locs.begin(), locs.end(), x) - locs.begin());
  };
  // phases e^{i|k_j|x} follow a geometric recurrence: |k_j| steps by +-dk
  // through the sorted node list (descending on the negative half)
  auto eval_sum = [&](const std::vector<cplx>& wa, const std::vector<cplx>& wb,
                      double x) {
    cplx acc{0.0, 0.0};
    const cplx wdn = std::exp(cplx{0.0, -opts.dk * x});
    const cplx wup = std::exp(cplx{0.0, opts.dk * x});
    cplx p = std::exp(cplx{0.0, std::abs(knodes[0]) * x});
    for (std::size_t j = 0; j < nk; ++j) {
      acc += wa[j] * p + wb[j] * std::conj(p);
      // |k| decreases by dk on the negative half, repeats across the center
      // pair, then increases by dk
      if (j + 1 < nk / 2)
        p *= wdn;
      else if (j + 1 > nk / 2)
        p *= wup;
    }
    return acc;
  };

  // analysis of f against the closed-form waves on f's grid
  std::vector<cplx> g(nk, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double x = f.grid[i];
    const std::size_t I = interval_of(x);
    const cplx w = norm * f.grid.dx * f[i];
    cplx p = std::exp(cplx{0.0, std::abs(knodes[0]) * x});
    const cplx wdn = std::exp(cplx{0.0, -opts.dk * x});
    const cplx wup = std::exp(cplx{0.0, opts.dk * x});
    for (std::size_t j = 0; j < nk; ++j) {
      g[j] += std::conj(coefA[I][j] * p + coefB[I][j] * std::conj(p)) * w;
      if (j + 1 < nk / 2)
        p *= wdn;
      else if (j + 1 > nk / 2)
        p *= wup;
    }
  }

  DecayReport rep;
  std::vector<std::vector<cplx>> wa(nint, std::vector<cplx>(nk));
  std::vector<std::vector<cplx>> wb(nint, std::vector<cplx>(nk));
  for (double t : t_list) {
    for (std::size_t j = 0; j < nk; ++j) {
      const double k = knodes[j];
      const cplx z = norm * opts.dk * g[j] * std::exp(cplx{0.0, -t * k * k});
      for (std::size_t I = 0; I < nint; ++I) {
        wa[I][j] = coefA[I][j] * z;
        wb[I][j] = coefB[I][j] * z;
      }
    }
    const double radius = 2.0 * opts.kmax * t + opts.scan_margin;
    double sup = 0.0;
    const auto npts = static_cast<std::size_t>(2.0 * radius / opts.scan_dx) + 1;
    for (std::size_t i = 0; i < npts; ++i) {
      const double x = -radius + opts.scan_dx * static_cast<double>(i);
      const std::size_t I = interval_of(x);
      sup = std::max(sup, std::abs(eval_sum(wa[I], wb[I], x)));
    }
    rep.points.push_back({t, sup});
    rep.sup_scaled = std::max(rep.sup_scaled, std::sqrt(t) * sup);
  }

  // least-squares slope of log ||u||_inf vs log t
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const DecayPoint& p : rep.points) {
    const double lx = std::log(p.t), ly = std::log(std::max(p.supnorm, 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(rep.points.size());
  rep.slope = (n * sxy - sx * sy) / std::max(n * sxx - sx * sx, 1e-300);
  return rep;
}

ResolventResult resolvent_sandwich(const SpectralDecomposition& d,
                                   const GridFunction& f) {
  auto mul_free = [&](const GridFunction& u, bool inverse) {
    KFunction g = fourier_analysis(d.table, u);
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double k2 = d.k().nodes[j] * d.k().nodes[j];
      g[j] *= inverse ? 1.0 / (k2 + 1.0) : (k2 + 1.0);
    }
    return fourier_synthesis(d.table, g);
  };

  ResolventResult r;
  // route A: (H0+1)^{-1} W+ (H0+1) W+^* f
  const GridFunction ws = apply_wplus_star(d, f);
  const GridFunction mid = mul_free(ws, false);
  const GridFunction wmid = apply_wplus(d, mid);
  r.result = mul_free(wmid, true);

  // route B: (H0+1)^{-1} F_+^* (k^2+1) F_+ f
  KFunction g = distorted_ft(d.table, f);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double k2 = d.k().nodes[j] * d.k().nodes[j];
    g[j] *= (k2 + 1.0);
  }
  const GridFunction routeB = mul_free(distorted_ft_adjoint(d.table, g), true);

  const double nf = std::max(norm_l2(f), 1e-300);
  r.norm_ratio = norm_l2(r.result) / nf;
  r.route_discrepancy = norm_l2(r.result - routeB) / nf;
  return r;
}

namespace {

// Exact eigendecomposition of the grid Hamiltonian: second differences plus
// the regular potential and on-node delta weights c_j/dx.  The propagator
// u -> V e^{-i lambda dt} V^T u is exactly unitary on the truncated space.
struct GridEigenPropagator {
  std::vector<double> evals;
  std::vector<double> evecs;  // column-major [mode][x], orthonormal in l2(dx)
  std::size_t n = 0;
  double dx = 1.0;
  std::vector<cplx> phase;    // e^{-i lambda dt}
  std::vector<cplx> coef;     // work

  GridEigenPropagator(const PotentialSpec& spec, const UniformGrid& x, double dt) {
    n = x.n;
    dx = x.dx;
    gsl_matrix* h = gsl_matrix_calloc(n, n);
    const double off = -1.0 / (dx * dx);
    for (std::size_t i = 0; i < n; ++i) {
      double diag = 2.0 / (dx * dx) + spec.regular(x[i]);
      gsl_matrix_set(h, i, i, diag);
      if (i + 1 < n) {
        gsl_matrix_set(h, i, i + 1, off);
        gsl_matrix_set(h, i + 1, i, off);
      }
    }
    for (const DeltaTerm& d : spec.deltas) {
      if (!x.has_point(d.location))
        throw std::invalid_argument("nls_solve: delta location off the grid");
      const std::size_t i = x.nearest_index(d.location);
      gsl_matrix_set(h, i, i, gsl_matrix_get(h, i, i) + d.strength / dx);
    }
    gsl_vector* ev = gsl_vector_alloc(n);
    gsl_matrix* vec = gsl_matrix_alloc(n, n);
    gsl_eigen_symmv_workspace* w = gsl_eigen_symmv_alloc(n);
    gsl_eigen_symmv(h, ev, vec, w);
    gsl_eigen_symmv_free(w);
    gsl_matrix_free(h);
    evals.resize(n);
    evecs.resize(n * n);
    const double scale = 1.0 / std::sqrt(dx);  // orthonormal wrt dx sum
    for (std::size_t m = 0; m < n; ++m) {
      evals[m] = gsl_vector_get(ev, m);
      for (std::size_t i = 0; i < n; ++i)
        evecs[m * n + i] = gsl_matrix_get(vec, i, m) * scale;
    }
    gsl_vector_free(ev);
    gsl_matrix_free(vec);
    phase.resize(n);
    for (std::size_t m = 0; m < n; ++m)
      phase[m] = std::exp(cplx{0.0, -dt * evals[m]});
    coef.resize(n);
  }

  void step(GridFunction& u) const {
    auto& c = const_cast<std::vector<cplx>&>(coef);
    for (std::size_t m = 0; m < n; ++m) {
      const double* v = evecs.data() + m * n;
      cplx s{0.0, 0.0};
      for (std::size_t i = 0; i < n; ++i) s += v[i] * u[i];
      c[m] = s * dx * phase[m];
    }
    std::fill(u.values.begin(), u.values.end(), cplx{0.0, 0.0});
    for (std::size_t m = 0; m < n; ++m) {
      const double* v = evecs.data() + m * n;
      const cplx cm = c[m];
      for (std::size_t i = 0; i < n; ++i) u[i] += cm * v[i];
    }
  }

  double energy(const GridFunction& u) const {
    auto& c = const_cast<std::vector<cplx>&>(coef);
    double e = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      const double* v = evecs.data() + m * n;
      cplx s{0.0, 0.0};
      for (std::size_t i = 0; i < n; ++i) s += v[i] * u[i];
      c[m] = s * dx;
      e += evals[m] * std::norm(c[m]);
    }
    return e;
  }
};

void nonlinear_half_step(GridFunction& u, const NLSConfig& cfg, double dt_half) {
  if (cfg.strength == 0.0) return;
  const double s = static_cast<double>(cfg.sign) * cfg.strength;
  for (auto& v : u.values) {
    const double a2 = std::norm(v);
    const double phase = -s * std::pow(a2, cfg.sigma) * dt_half;
    v *= std::exp(cplx{0.0, phase});
  }
}

double spectral_energy(const SpectralDecomposition& d, const GridFunction& u,
                       const NLSConfig& cfg) {
  const KFunction g = distorted_ft(d.table, u);
  double e = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double k = d.k().nodes[j];
    e += k * k * std::norm(g[j]) * d.k().dk;
  }
  for (const BoundStateOnGrid& b : d.bound)
    e -= b.kappa * b.kappa * std::norm(inner(b.state, u));
  if (cfg.strength != 0.0) {
    const double s = static_cast<double>(cfg.sign) * cfg.strength;
    double nl = 0.0;
    for (const cplx& v : u.values) nl += std::pow(std::norm(v), cfg.sigma + 1.0);
    e += s / (cfg.sigma + 1.0) * nl * u.grid.dx;
  }
  return e;
}

StepDiagnostics diagnostics_at(const SpectralDecomposition& d, const GridFunction& u,
                               const NLSConfig& cfg, double t,
                               const GridEigenPropagator* eig) {
  StepDiagnostics s;
  s.t = t;
  // plain grid mass: the exact conserved quantity of the unitary substep
  double m = 0.0;
  for (const cplx& v : u.values) m += std::norm(v);
  s.mass = m * u.grid.dx;
  s.supnorm = norm_sup(u);
  double elin;
  if (eig) {
    elin = eig->energy(u);
    if (cfg.strength != 0.0) {
      const double sgn = static_cast<double>(cfg.sign) * cfg.strength;
      double nl = 0.0;
      for (const cplx& v : u.values) nl += std::pow(std::norm(v), cfg.sigma + 1.0);
      elin += sgn / (cfg.sigma + 1.0) * nl * u.grid.dx;
    }
    s.energy = elin;
  } else {
    s.energy = spectral_energy(d, u, cfg);
  }
  double lm = 0.0, rm = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double w = std::norm(u[i]) * u.grid.dx;
    if (u.grid[i] < 0.0)
      lm += w;
    else if (u.grid[i] > 0.0)
      rm += w;
    else {
      lm += 0.5 * w;
      rm += 0.5 * w;
    }
  }
  s.left_mass = lm;
  s.right_mass = rm;
  return s;
}

}  // namespace

EvolutionTrace nls_solve(const SpectralDecomposition& d, const GridFunction& u0,
                         const NLSConfig& cfg) {
  if (!(cfg.sigma > 0.0)) throw std::invalid_argument("nls_solve: sigma > 0");
  if (!(cfg.dt > 0.0) || !(cfg.t_final > 0.0))
    throw std::invalid_argument("nls_solve: dt, t_final > 0");
  if (cfg.sign != 1 && cfg.sign != -1)
    throw std::invalid_argument("nls_solve: sign must be +-1");

  const auto nsteps = static_cast<std::size_t>(std::llround(cfg.t_final / cfg.dt));

  std::unique_ptr<GridEigenPropagator> eig;
  if (cfg.linear_step == LinearStep::GridEigen)
    eig = std::make_unique<GridEigenPropagator>(d.spec(), d.x(), cfg.dt);

  // cached linear phases for the repeated substep
  std::vector<cplx> phase(d.k().size());
  for (std::size_t j = 0; j < phase.size(); ++j) {
    const double k = d.k().nodes[j];
    phase[j] = std::exp(cplx{0.0, -cfg.dt * k * k});
  }
  std::vector<cplx> bphase(d.bound.size());
  for (std::size_t b = 0; b < d.bound.size(); ++b)
    bphase[b] = std::exp(cplx{0.0, cfg.dt * d.bound[b].kappa * d.bound[b].kappa});

  EvolutionTrace trace;
  GridFunction u = u0;
  attach_delta_kinks(d.spec(), u);
  const double sup0 = std::max(norm_sup(u), 1e-300);
  const double nl_freq = cfg.strength * std::pow(sup0, 2.0 * cfg.sigma);
  trace.step_warning = cfg.dt * nl_freq >= 0.1;

  trace.times.push_back(0.0);
  trace.states.push_back(u);
  trace.diagnostics.push_back(diagnostics_at(d, u, cfg, 0.0, eig.get()));

  for (std::size_t step = 1; step <= nsteps; ++step) {
    nonlinear_half_step(u, cfg, 0.5 * cfg.dt);
    attach_delta_kinks(d.spec(), u);

    if (eig) {
      eig->step(u);
    } else {
      // linear substep on the truncated distorted-spectral space
      KFunction g = distorted_ft(d.table, u);
      std::vector<cplx> bc(d.bound.size());
      for (std::size_t b = 0; b < d.bound.size(); ++b)
        bc[b] = inner(d.bound[b].state, u);
      kern::pointwise_mul(phase.data(), g.values.data(), g.size());
      u = distorted_ft_adjoint(d.table, g);
      for (std::size_t b = 0; b < d.bound.size(); ++b) {
        const cplx c = bc[b] * bphase[b];
        kern::axpy(c, d.bound[b].state.values.data(), u.values.data(), u.size());
      }
    }
    attach_delta_kinks(d.spec(), u);

    nonlinear_half_step(u, cfg, 0.5 * cfg.dt);
    attach_delta_kinks(d.spec(), u);

    const double t = cfg.dt * static_cast<double>(step);
    if (norm_sup(u) > 10.0 * sup0) {
      trace.blowup = true;
      trace.times.push_back(t);
      trace.states.push_back(u);
      trace.diagnostics.push_back(diagnostics_at(d, u, cfg, t, eig.get()));
      break;
    }
    if (step % cfg.record_every == 0 || step == nsteps) {
      trace.times.push_back(t);
      trace.states.push_back(u);
      trace.diagnostics.push_back(diagnostics_at(d, u, cfg, t, eig.get()));
    }
  }
  return trace;
}

DoubleWellResult double_well_demo(double q, double L, const NLSConfig& cfg,
                                  WellRecipe recipe, double xmax, double kmax) {
  if (!(q > 0.0) || !(L > 0.0))
    throw std::invalid_argument("double_well_demo: q, L > 0");
  PotentialSpec spec;
  spec.deltas = {{-2.0 * q, -L}, {-2.0 * q, L}};

  // grid with the delta locations on nodes
  const double dx_target = 0.05;
  const auto per_unit = static_cast<std::size_t>(std::ceil(L / dx_target));
  const double dx = L / static_cast<double>(per_unit);
  UniformGrid x = UniformGrid::symmetric(xmax, dx);
  const KGrid k = KGrid::for_domain(xmax, 1e-3, kmax);

  SpectralDecomposition d = build_decomposition(spec, k, x);
  if (d.bound.size() < 2)
    throw std::invalid_argument("double_well_demo: need two bound states (qL > 1/2)");

  DoubleWellResult out;
  for (const auto& b : d.bound) out.kappas.push_back(b.kappa);
  const double k1 = d.bound.back().kappa;   // ground (even)
  const double k2 = d.bound.front().kappa;  // excited (odd)
  out.beat_period_linear = 2.0 * pi / (k1 * k1 - k2 * k2);

  GridFunction u0(x);
  const GridFunction& even = d.bound.back().state;
  const GridFunction& odd = d.bound.front().state;
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < x.n; ++i) {
    if (recipe == WellRecipe::OneWell)
      u0[i] = r * (even[i] + odd[i]);
    else
      u0[i] = even[i];
  }

  out.trace = nls_solve(d, u0, cfg);

  // beat period from zero crossings of left_mass - right_mass
  std::vector<double> crossings;
  for (std::size_t i = 1; i < out.trace.diagnostics.size(); ++i) {
    const double a = out.trace.diagnostics[i - 1].left_mass -
                     out.trace.diagnostics[i - 1].right_mass;
    const double b = out.trace.diagnostics[i].left_mass -
                     out.trace.diagnostics[i].right_mass;
    if (a == 0.0 || a * b >= 0.0) continue;
    const double ta = out.trace.times[i - 1], tb = out.trace.times[i];
    crossings.push_back(ta + (tb - ta) * a / (a - b));
  }
  if (crossings.size() >= 2)
    out.beat_period_measured = 2.0 * (crossings.back() - crossings.front()) /
                               static_cast<double>(crossings.size() - 1);
  return out;
}

}  // namespace scat1d
