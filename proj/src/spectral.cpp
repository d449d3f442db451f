#include "scat1d/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "scat1d/kernels.hpp"

namespace scat1d {

using namespace std::complex_literals;
using std::numbers::pi;

KGrid KGrid::symmetric_band(double kmin, double kmax, double dk) {
  if (!(kmin >= 0.0) || !(kmax > kmin) || !(dk > 0.0))
    throw std::invalid_argument("KGrid: need 0 <= kmin < kmax, dk > 0");
  KGrid g;
  g.kmin = kmin;
  g.kmax = kmax;
  g.dk = dk;
  const auto m = static_cast<std::size_t>(std::floor((kmax - kmin) / dk + 1e-12));
  if (m == 0) throw std::invalid_argument("KGrid: empty band");
  g.nodes.resize(2 * m);
  for (std::size_t j = 0; j < m; ++j) {
    const double k = kmin + (static_cast<double>(j) + 0.5) * dk;
    g.nodes[m + j] = k;
    g.nodes[m - 1 - j] = -k;
  }
  return g;
}

KGrid KGrid::for_domain(double xmax, double kmin, double kmax) {
  const double dk = pi / (4.0 * xmax);
  return symmetric_band(kmin, kmax, dk);
}

KGrid KGrid::dft_matched(const UniformGrid& x, double kmax) {
  const double dk = 2.0 * pi / (static_cast<double>(x.n) * x.dx);
  return symmetric_band(0.0, kmax, dk);
}

double norm_l2(const KFunction& g) {
  return std::sqrt(g.grid.dk * kern::norm_sq(g.values.data(), g.size()));
}

DistortedWaveTable build_distorted_waves(const PotentialSpec& spec, const KGrid& k,
                                         const UniformGrid& x, WaveSource source,
                                         double taper_fraction,
                                         double inner_taper_nodes) {
  DistortedWaveTable t;
  t.spec = spec;
  t.x = x;
  t.k = k;
  t.source = source;
  const std::size_t nk = k.size(), nx = x.n;
  t.psi.resize(nk * nx);
  t.T.resize(nk);
  t.R1.resize(nk);
  t.R2.resize(nk);
  t.band_taper.assign(nk, 1.0);
  if (taper_fraction < 1.0) {
    // smooth-to-all-orders roll-off: a merely C^2 profile leaves polynomial
    // x-tails in every synthesis, which the finite domain then truncates
    auto bump = [](double tt) {
      if (tt <= 0.0) return 1.0;
      if (tt >= 1.0) return 0.0;
      const double a = std::exp(-1.0 / tt);
      const double b = std::exp(-1.0 / (1.0 - tt));
      return b / (a + b);
    };
    const double start = k.kmin + taper_fraction * (k.kmax - k.kmin);
    for (std::size_t j = 0; j < nk; ++j) {
      const double a = std::abs(k.nodes[j]);
      if (a <= start) continue;
      t.band_taper[j] = bump((a - start) / (k.kmax - start));
    }
  }
  if (inner_taper_nodes > 0.0) {
    auto bump = [](double tt) {
      if (tt <= 0.0) return 1.0;
      if (tt >= 1.0) return 0.0;
      const double a = std::exp(-1.0 / tt);
      const double b = std::exp(-1.0 / (1.0 - tt));
      return b / (a + b);
    };
    const double width = inner_taper_nodes * k.dk;
    for (std::size_t j = 0; j < nk; ++j) {
      const double a = std::abs(k.nodes[j]);
      if (a >= k.kmin + width) continue;
      t.band_taper[j] *= bump(1.0 - (a - k.kmin) / width);
    }
  }
  const double norm = 1.0 / std::sqrt(2.0 * pi);

  const bool use_jost = (source == WaveSource::Jost) || !spec.pure_delta();

  if (!use_jost) {
    std::vector<double> locs;
    for (const DeltaTerm& d : spec.deltas) locs.push_back(d.location);
    for (std::size_t j = 0; j < nk; ++j) {
      const double kj = k.nodes[j];
      const double ka = std::abs(kj);
      const TRPoint tr = scattering_point(spec, ka);
      t.T[j] = kj >= 0.0 ? tr.T : std::conj(tr.T);
      t.R1[j] = kj >= 0.0 ? tr.R1 : std::conj(tr.R1);
      t.R2[j] = kj >= 0.0 ? tr.R2 : std::conj(tr.R2);
      const PlaneWaveCoefficients cf =
          kj >= 0.0 ? eplus_coefficients(spec, ka) : eminus_coefficients(spec, ka);
      for (std::size_t i = 0; i < nx; ++i)
        t.psi[j * nx + i] = norm * eval_piecewise_wave(cf, locs, ka, x[i]);
    }
    return t;
  }

  // Jost route: Psi_+(x,k) = T(k) e^{ikx} m1(x,k) / sqrt(2pi) for k >= 0,
  //             T(-k) e^{ikx} m2(x,-k) / sqrt(2pi) for k < 0
  std::vector<double> kabs;
  kabs.reserve(nk / 2);
  for (std::size_t j = nk / 2; j < nk; ++j) kabs.push_back(k.nodes[j]);
  const JostSolution jost = solve_jost(spec, kabs, x);
  const MixedResult mr = mixed_scattering(spec, kabs);

  for (std::size_t jj = 0; jj < kabs.size(); ++jj) {
    const double ka = kabs[jj];
    const std::size_t jp = nk / 2 + jj;   // +ka node
    const std::size_t jm = k.mirror(jp);  // -ka node
    const cplx T = mr.data.T[jj];
    t.T[jp] = T;
    t.T[jm] = std::conj(T);
    t.R1[jp] = mr.data.R1[jj];
    t.R1[jm] = std::conj(mr.data.R1[jj]);
    t.R2[jp] = mr.data.R2[jj];
    t.R2[jm] = std::conj(mr.data.R2[jj]);
    for (std::size_t i = 0; i < nx; ++i) {
      const cplx e = std::exp(1.0i * ka * x[i]);
      t.psi[jp * nx + i] = norm * T * e * jost.m1_at(jj, i);
      t.psi[jm * nx + i] = norm * T / e * jost.m2_at(jj, i);
    }
  }
  return t;
}

void DistortedWaveTable::plane_row(std::size_t kj, cplx* out) const {
  const double norm = 1.0 / std::sqrt(2.0 * pi);
  const cplx step = std::exp(cplx{0.0, k.nodes[kj] * x.dx});
  cplx p = norm * std::exp(cplx{0.0, k.nodes[kj] * x.x0});
  for (std::size_t i = 0; i < x.n; ++i) {
    out[i] = p;
    p *= step;
  }
}

cplx psi_plus(const DistortedWaveTable& table, double x, double k) {
  const double norm = 1.0 / std::sqrt(2.0 * pi);
  if (table.spec.pure_delta()) {
    std::vector<double> locs;
    for (const DeltaTerm& d : table.spec.deltas) locs.push_back(d.location);
    const double ka = std::abs(k);
    const PlaneWaveCoefficients cf = k >= 0.0 ? eplus_coefficients(table.spec, ka)
                                              : eminus_coefficients(table.spec, ka);
    return norm * eval_piecewise_wave(cf, locs, ka, x);
  }
  std::size_t best = 0;
  double dist = 1e300;
  for (std::size_t j = 0; j < table.k.size(); ++j)
    if (std::abs(table.k.nodes[j] - k) < dist) {
      dist = std::abs(table.k.nodes[j] - k);
      best = j;
    }
  if (dist > 1e-9 * table.k.dk || !table.x.has_point(x))
    throw std::invalid_argument("psi_plus: off-table evaluation for mixed spec");
  return table.psi_at(best, table.x.nearest_index(x));
}

namespace {

// the band taper rides on the distorted pair only, so that P_c = F+^* F+
// and W+ W+^* = F+^* (F F^{-1}) F+ carry the same total taper power
KFunction analyze(const DistortedWaveTable& t, bool distorted,
                  const GridFunction& f) {
  if (!(f.grid == t.x)) throw std::invalid_argument("analysis: grid mismatch");
  KFunction g(t.k);
  const std::size_t nx = t.x.n;
  const double h = t.x.dx;
  const double c = h * h / 12.0;

  struct DeltaPt {
    std::size_t idx;
    double strength;
  };
  std::vector<DeltaPt> dpts;
  if (distorted)
    for (const DeltaTerm& d : t.spec.deltas)
      if (t.x.has_point(d.location))
        dpts.push_back({t.x.nearest_index(d.location), d.strength});

  std::vector<cplx> buf;
  if (!distorted) buf.resize(nx);
  for (std::size_t j = 0; j < t.k.size(); ++j) {
    const cplx* row;
    if (distorted) {
      row = t.psi.data() + j * nx;
    } else {
      t.plane_row(j, buf.data());
      row = buf.data();
    }
    cplx s = kern::dot_conj(row, f.values.data(), nx) * h;
    if (distorted) {
      // [d(conj(psi) f)/dx] = conj([psi']) f + conj(psi) [f']; the plane
      // side stays a bare lattice sum so that a DFT-matched k-lattice keeps
      // the free pair exactly unitary on the grid
      for (const DeltaPt& d : dpts)
        s += c * d.strength * std::conj(row[d.idx]) * f[d.idx];
      for (const Kink& kk : f.kinks) s += c * std::conj(row[kk.index]) * kk.dslope;
      s *= t.band_taper[j];
    }
    g[j] = s;
  }
  return g;
}

GridFunction synthesize(const DistortedWaveTable& t, bool distorted,
                        const KFunction& g) {
  if (g.size() != t.k.size()) throw std::invalid_argument("synthesis: k mismatch");
  GridFunction u(t.x);
  const std::size_t nx = t.x.n;
  std::vector<cplx> buf;
  if (!distorted) buf.resize(nx);
  for (std::size_t j = 0; j < t.k.size(); ++j) {
    const cplx w = distorted ? t.k.dk * t.band_taper[j] * g[j] : t.k.dk * g[j];
    if (distorted) {
      kern::axpy(w, t.psi.data() + j * nx, u.values.data(), nx);
    } else {
      t.plane_row(j, buf.data());
      kern::axpy(w, buf.data(), u.values.data(), nx);
    }
  }
  if (distorted) attach_delta_kinks(t.spec, u);
  return u;
}

}  // namespace

KFunction distorted_ft(const DistortedWaveTable& table, const GridFunction& f) {
  return analyze(table, true, f);
}

GridFunction distorted_ft_adjoint(const DistortedWaveTable& table,
                                  const KFunction& g) {
  return synthesize(table, true, g);
}

KFunction fourier_analysis(const DistortedWaveTable& table, const GridFunction& f) {
  return analyze(table, false, f);
}

GridFunction fourier_synthesis(const DistortedWaveTable& table, const KFunction& g) {
  return synthesize(table, false, g);
}

void attach_delta_kinks(const PotentialSpec& spec, GridFunction& u) {
  u.kinks.clear();
  for (const DeltaTerm& d : spec.deltas) {
    if (!u.grid.has_point(d.location)) continue;
    const std::size_t idx = u.grid.nearest_index(d.location);
    u.kinks.push_back(Kink{idx, d.strength * u[idx]});
  }
}

SpectralDecomposition build_decomposition(const PotentialSpec& spec, const KGrid& k,
                                          const UniformGrid& x, WaveSource source,
                                          double taper_fraction,
                                          double inner_taper_nodes) {
  SpectralDecomposition d;
  d.table =
      build_distorted_waves(spec, k, x, source, taper_fraction, inner_taper_nodes);
  if (spec.pure_delta()) {
    for (const BoundState& b : bound_states(spec)) {
      BoundStateOnGrid bg;
      bg.kappa = b.kappa;
      bg.state = b.sample(x);
      const double n = norm_l2(bg.state);
      for (auto& v : bg.state.values) v /= n;
      for (auto& kk : bg.state.kinks) kk.dslope /= n;
      d.bound.push_back(std::move(bg));
    }
  }
  return d;
}

PcResult pc_project(const SpectralDecomposition& decomp, const GridFunction& f,
                    double warn_tol) {
  PcResult r;
  r.pcf = distorted_ft_adjoint(decomp.table, distorted_ft(decomp.table, f));

  // route (b): f minus the bound-state components
  GridFunction fb = f;
  for (const BoundStateOnGrid& b : decomp.bound) {
    const cplx c = inner(b.state, f);
    for (std::size_t i = 0; i < fb.size(); ++i) fb[i] -= c * b.state[i];
  }
  const double nf = std::max(norm_l2(f), 1e-300);
  r.route_discrepancy = norm_l2(r.pcf - fb) / nf;
  r.ok = r.route_discrepancy <= warn_tol;
  return r;
}

}  // namespace scat1d
