#include "scat1d/wave_operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "scat1d/fft.hpp"
#include "scat1d/kernels.hpp"

namespace scat1d {

using namespace std::complex_literals;
using std::numbers::pi;

double FrequencyCutoff::operator()(double k) const {
  const double a = std::abs(k);
  if (a <= k0) return 1.0;
  if (a >= 2.0 * k0) return 0.0;
  const double t = (a - k0) / k0;  // in (0, 1)
  const double s = t * t * t * (10.0 + t * (-15.0 + 6.0 * t));  // smoothstep5
  return 1.0 - s;
}

GridFunction apply_wplus(const SpectralDecomposition& d, const GridFunction& f) {
  return distorted_ft_adjoint(d.table, fourier_analysis(d.table, f));
}

GridFunction apply_wplus_star(const SpectralDecomposition& d, const GridFunction& f) {
  return fourier_synthesis(d.table, distorted_ft(d.table, f));
}

namespace {

// apply a multiplier in FFT space on the window treated periodically; the
// multiplier algebra (involutions, partitions) is then exact on the grid
GridFunction fft_complex_multiplier(const GridFunction& f,
                                    const std::function<cplx(double)>& mult) {
  std::vector<cplx> buf(f.values);
  dft(buf, -1);
  const auto freqs = fft_freqs(buf.size(), f.grid.dx);
  for (std::size_t j = 0; j < buf.size(); ++j) buf[j] *= mult(freqs[j]);
  idft_normalized(buf);
  GridFunction out(f.grid);
  out.values = std::move(buf);
  return out;
}

GridFunction fft_multiplier(const GridFunction& f,
                            const std::function<double(double)>& mult) {
  return fft_complex_multiplier(f, [&](double k) { return cplx{mult(k), 0.0}; });
}

}  // namespace

GridFunction hilbert_transform(const GridFunction& f) {
  return fft_complex_multiplier(f, [](double k) -> cplx {
    if (k > 0.0) return {0.0, -1.0};
    if (k < 0.0) return {0.0, 1.0};
    return {0.0, 0.0};  // sgn(0) = 0 annihilates the mean
  });
}

std::pair<GridFunction, GridFunction> frequency_split(const GridFunction& f,
                                                      const FrequencyCutoff& cutoff) {
  GridFunction low = fft_multiplier(f, [&](double k) { return cutoff(k); });
  GridFunction high = f;
  for (std::size_t i = 0; i < f.size(); ++i) high[i] = f[i] - low[i];
  return {std::move(low), std::move(high)};
}

GridFunction parity(const GridFunction& f) {
  if (std::abs(f.grid.front() + f.grid.back()) > 1e-9 * f.grid.dx)
    throw std::invalid_argument("parity: grid must be symmetric about 0");
  GridFunction out(f.grid);
  const std::size_t n = f.size();
  for (std::size_t i = 0; i < n; ++i) out[i] = f[n - 1 - i];
  return out;
}

GridFunction band_limit(const SpectralDecomposition& d, const GridFunction& f) {
  return fourier_synthesis(d.table, fourier_analysis(d.table, f));
}

KernelOperator sj_kernel(const B1Kernel& b1, int which) {
  if (which != 1 && which != 2)
    throw std::invalid_argument("sj_kernel: which must be 1 or 2");
  KernelOperator op;
  op.rows = b1.x;
  op.cols = b1.x;
  op.a.assign(b1.x.n * b1.x.n, cplx{0.0, 0.0});
  const std::size_t ny = b1.y.size();
  const bool want_dx = (which == 2);
  for (std::size_t i = 0; i < b1.x.n; ++i) {
    const double x = b1.x[i];
    for (std::size_t j = 0; j < b1.x.n; ++j) {
      const double y = b1.x[j];
      if (y < x) continue;
      const double z = 0.5 * (y - x);  // B1 second argument
      const double t = z / b1.dy;
      const auto m0 = static_cast<std::size_t>(t);
      if (m0 + 1 >= ny) continue;
      const double fr = t - static_cast<double>(m0);
      const cplx v0 = want_dx ? b1.dx_at(i, m0) : b1.at(i, m0);
      const cplx v1 = want_dx ? b1.dx_at(i, m0 + 1) : b1.at(i, m0 + 1);
      cplx v = (1.0 - fr) * v0 + fr * v1;
      if (j == i) v *= 0.5;  // midpoint value on the jump line y = x
      op.a[i * b1.x.n + j] = v;
    }
  }
  return op;
}

double young_constant(const KernelOperator& op) {
  double row_sup = 0.0;
  for (std::size_t i = 0; i < op.rows.n; ++i)
    row_sup = std::max(row_sup,
                       kern::abs_sum(op.a.data() + i * op.cols.n, op.cols.n));
  double col_sup = 0.0;
  for (std::size_t j = 0; j < op.cols.n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < op.rows.n; ++i) s += std::abs(op.at(i, j));
    col_sup = std::max(col_sup, s);
  }
  return row_sup * op.cols.dx + col_sup * op.rows.dx;
}

GridFunction apply_kernel(const KernelOperator& op, const GridFunction& phi) {
  if (!(phi.grid == op.cols)) throw std::invalid_argument("apply_kernel: grid mismatch");
  GridFunction out(op.rows);
  for (std::size_t i = 0; i < op.rows.n; ++i) {
    // plain dot (no conjugation): sum A(x,y) phi(y)
    cplx s{0.0, 0.0};
    const cplx* row = op.a.data() + i * op.cols.n;
    for (std::size_t j = 0; j < op.cols.n; ++j) s += row[j] * phi[j];
    out[i] = s * op.cols.dx;
  }
  return out;
}

double sobolev_norm(const GridFunction& f, double p,
                    std::span<const double> kink_locations) {
  if (p <= 1.0) throw std::invalid_argument("sobolev_norm: p > 1 required");
  const std::size_t n = f.size();
  const double h = f.grid.dx;
  std::vector<std::size_t> kidx;
  for (double y : kink_locations)
    if (f.grid.has_point(y)) kidx.push_back(f.grid.nearest_index(y));

  GridFunction df(f.grid);
  auto kink_in = [&](long lo, long hi) {
    for (std::size_t d : kidx) {
      const long dd = static_cast<long>(d);
      if (dd >= lo && dd <= hi) return true;
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const long li = static_cast<long>(i);
    if (i >= 2 && i + 2 < n && !kink_in(li - 2, li + 2)) {
      df[i] = (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) / (12.0 * h);
    } else if (i + 2 < n && !kink_in(li + 1, li + 2)) {
      // one-sided to the right (right-limit at a kink point)
      df[i] = (-3.0 * f[i] + 4.0 * f[i + 1] - f[i + 2]) / (2.0 * h);
    } else if (i >= 2 && !kink_in(li - 2, li - 1)) {
      df[i] = (3.0 * f[i] - 4.0 * f[i - 1] + f[i - 2]) / (2.0 * h);
    } else if (i + 1 < n) {
      df[i] = (f[i + 1] - f[i]) / h;
    } else {
      df[i] = (f[i] - f[i - 1]) / h;
    }
  }
  return norm_lp(f, p) + norm_lp(df, p);
}

double sobolev_ratio(const SpectralDecomposition& d, double p,
                     std::span<const GridFunction> family) {
  if (p <= 1.0)
    throw std::invalid_argument("sobolev_ratio: p > 1 (wave operators are not "
                                "bounded on L^1)");
  if (family.empty()) throw std::invalid_argument("sobolev_ratio: empty family");
  std::vector<double> locs;
  for (const DeltaTerm& dt : d.spec().deltas) locs.push_back(dt.location);
  double worst = 0.0;
  for (const GridFunction& f : family) {
    const GridFunction wf = apply_wplus(d, f);
    const double num = sobolev_norm(wf, p, locs);
    const double den = sobolev_norm(f, p, {});
    worst = std::max(worst, num / den);
  }
  return worst;
}

double intertwining_check(const SpectralDecomposition& d, const GridFunction& f,
                          const std::function<cplx(double)>& borel) {
  // route 1: borel(H) P_c f = F_+^* borel(k^2) F_+ f
  KFunction g = distorted_ft(d.table, f);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double k = d.k().nodes[j];
    g[j] *= borel(k * k);
  }
  const GridFunction lhs = distorted_ft_adjoint(d.table, g);

  // route 2: W+ borel(H0) W+^* f
  const GridFunction ws = apply_wplus_star(d, f);
  KFunction gh = fourier_analysis(d.table, ws);
  for (std::size_t j = 0; j < gh.size(); ++j) {
    const double k = d.k().nodes[j];
    gh[j] *= borel(k * k);
  }
  const GridFunction rhs = distorted_ft_adjoint(d.table, gh);

  return norm_l2(lhs - rhs) / std::max(norm_l2(f), 1e-300);
}

std::vector<GridFunction> probe_family(const UniformGrid& g, double band_lo,
                                       double band_hi, std::size_t count,
                                       unsigned seed) {
  if (!(0.0 < band_lo && band_lo < band_hi))
    throw std::invalid_argument("probe_family: need 0 < band_lo < band_hi");
  std::mt19937 rng(seed);
  const double mid = 0.5 * (band_lo + band_hi);
  const double half_width = 0.5 * (band_hi - band_lo);
  const double sigma_x = 5.0 / half_width;
  const double x_room = 0.25 * (g.back() - g.front());

  // smooth band-pass enforcing the family contract: raw draws (Hermite tails
  // especially) otherwise leak spectral mass below band_lo toward k = 0.
  // The profile is smooth to all orders so the filtered draws keep
  // super-polynomial spatial decay.
  const double edge = 0.15 * (band_hi - band_lo);
  auto bump_rise = [](double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
  };
  auto band_pass = [&](GridFunction& f) {
    f = fft_multiplier(f, [&](double k) {
      const double a = std::abs(k);
      return bump_rise((a - band_lo) / edge) *
             bump_rise((band_hi - a) / edge);
    });
  };

  std::uniform_real_distribution<double> uk(band_lo + 0.35 * half_width,
                                            band_hi - 0.35 * half_width);
  std::uniform_real_distribution<double> ux(-0.3 * x_room, 0.3 * x_room);
  std::uniform_real_distribution<double> uph(0.0, 2.0 * pi);
  std::uniform_int_distribution<int> uherm(0, 3);
  std::uniform_int_distribution<int> usign(0, 1);

  std::vector<GridFunction> fam;
  fam.reserve(count);
  for (std::size_t m = 0; m < count; ++m) {
    GridFunction f(g);
    const int kind = static_cast<int>(m % 4);
    if (kind == 0) {
      // modulated Gaussian
      const double k0 = (usign(rng) ? 1.0 : -1.0) * uk(rng);
      const double x0 = ux(rng);
      for (std::size_t i = 0; i < g.n; ++i) {
        const double x = g[i];
        f[i] = std::exp(-0.5 * (x - x0) * (x - x0) / (sigma_x * sigma_x)) *
               std::exp(1.0i * k0 * x);
      }
    } else if (kind == 1) {
      // plain Gaussian recentered in k: cos-modulated, spectrum at +-mid
      const double x0 = ux(rng);
      for (std::size_t i = 0; i < g.n; ++i) {
        const double x = g[i];
        f[i] = std::exp(-0.5 * (x - x0) * (x - x0) / (sigma_x * sigma_x)) *
               std::cos(mid * (x - x0));
      }
    } else if (kind == 2) {
      // Hermite function times carrier
      const int nh = uherm(rng);
      const double k0 = (usign(rng) ? 1.0 : -1.0) * uk(rng);
      for (std::size_t i = 0; i < g.n; ++i) {
        const double u = g[i] / sigma_x;
        double hermite = 1.0;
        if (nh == 1) hermite = 2.0 * u;
        if (nh == 2) hermite = 4.0 * u * u - 2.0;
        if (nh == 3) hermite = 8.0 * u * u * u - 12.0 * u;
        f[i] = hermite * std::exp(-0.5 * u * u) * std::exp(1.0i * k0 * g[i]);
      }
    } else {
      // random superposition of modulated Gaussians
      for (int comp = 0; comp < 6; ++comp) {
        const double k0 = (usign(rng) ? 1.0 : -1.0) * uk(rng);
        const double x0 = ux(rng);
        const cplx amp = std::exp(1.0i * uph(rng));
        for (std::size_t i = 0; i < g.n; ++i) {
          const double x = g[i];
          f[i] += amp *
                  std::exp(-0.5 * (x - x0) * (x - x0) / (sigma_x * sigma_x)) *
                  std::exp(1.0i * k0 * x);
        }
      }
    }
    band_pass(f);
    const double nrm = norm_l2(f);
    for (auto& v : f.values) v /= nrm;
    fam.push_back(std::move(f));
  }
  return fam;
}

double six_term_lowpass_residual(const SpectralDecomposition& d,
                                 const GridFunction& f, double k0) {
  const DistortedWaveTable& t = d.table;
  const KGrid& kg = t.k;
  const FrequencyCutoff psi{k0};

  // phi_hat in the 1/(2pi) analysis convention: F f / sqrt(2 pi)
  KFunction fhat = fourier_analysis(t, f);
  const double s2p = std::sqrt(2.0 * pi);
  std::vector<cplx> phat(kg.size());
  for (std::size_t j = 0; j < kg.size(); ++j) phat[j] = fhat[j] / s2p;

  // reference: W+ applied to the node-filtered data
  KFunction filt = fhat;
  for (std::size_t j = 0; j < kg.size(); ++j) filt[j] *= psi(kg.nodes[j]);
  const GridFunction ref = distorted_ft_adjoint(t, filt);

  // m1 on the table nodes: k > 0 from Psi+T, k < 0 by conjugation symmetry
  const std::size_t nx = t.x.n;
  auto m1_at = [&](std::size_t j, std::size_t i) -> cplx {
    if (kg.nodes[j] > 0.0) {
      const cplx e = std::exp(1.0i * kg.nodes[j] * t.x[i]);
      return s2p * t.psi_at(j, i) / (t.T[j] * e);
    }
    const std::size_t jm = kg.mirror(j);
    const cplx e = std::exp(1.0i * kg.nodes[jm] * t.x[i]);
    return std::conj(s2p * t.psi_at(jm, i) / (t.T[jm] * e));
  };

  double worst = 0.0, scale = 1e-300;
  for (std::size_t i = 0; i < nx; ++i) {
    if (t.x[i] < 0.0) continue;
    // the six lines of the low-frequency decomposition; (1 +- sgn k)/2
    // factors realized by restricting each sum to its half-line of nodes
    cplx t1{0.0, 0.0}, t2{0.0, 0.0}, t3{0.0, 0.0};
    cplx t4{0.0, 0.0}, t5{0.0, 0.0}, t6{0.0, 0.0};
    for (std::size_t j = 0; j < kg.size(); ++j) {
      const double k = kg.nodes[j];
      const double cut = psi(k);
      if (cut == 0.0) continue;
      const cplx eikx = std::exp(1.0i * k * t.x[i]);
      const cplx m1m = m1_at(j, i) - 1.0;
      const cplx w = kg.dk * cut * eikx * t.band_taper[j];
      if (k > 0.0) {
        t1 += w * m1m * t.T[j] * phat[j];
        t2 += w * m1m * t.R1[j] * phat[kg.mirror(j)];
        t4 += w * t.T[j] * phat[j];
        t5 += w * t.R1[j] * phat[kg.mirror(j)];
      } else {
        t3 += w * m1m * phat[j];
        t6 += w * phat[j];
      }
    }
    const cplx acc = t1 + t2 + t3 + t4 + t5 + t6;
    worst = std::max(worst, std::abs(acc - ref[i]));
    scale = std::max(scale, std::abs(ref[i]));
  }
  return worst / scale;
}

}  // namespace scat1d
