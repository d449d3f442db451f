#include "scat1d/jost.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "scat1d/fft.hpp"
#include "scat1d/quadrature.hpp"

namespace scat1d {

using namespace std::complex_literals;
using std::numbers::pi;

cplx dk_kernel(cplx k, double x) {
  const cplx a = 2.0i * k;
  const cplx ax = a * x;
  if (std::abs(ax) < 1e-2)
    return x * (1.0 + ax * (0.5 + ax * (1.0 / 6.0 + ax * (1.0 / 24.0 + ax / 120.0))));
  return (std::exp(ax) - 1.0) / a;
}

namespace {

// int_0^h e^{a s}(1 - s/h) ds and int_0^h e^{a s}(s/h) ds
struct CellWeights {
  cplx wa, wb;
};

CellWeights product_weights(cplx a, double h) {
  const cplx x = a * h;
  if (std::abs(x) < 1e-2) {
    const cplx wa =
        h * (0.5 + x * (1.0 / 6.0 + x * (1.0 / 24.0 + x * (1.0 / 120.0 + x / 720.0))));
    const cplx wb =
        h * (0.5 + x * (1.0 / 3.0 + x * (1.0 / 8.0 + x * (1.0 / 30.0 + x / 144.0))));
    return {wa, wb};
  }
  const cplx e = std::exp(x);
  const cplx wb = e * h / x - (e - 1.0) * h / (x * x);
  const cplx wa = (e - 1.0) * h / x - wb;
  return {wa, wb};
}

struct DeltaOnGrid {
  std::size_t index;
  double strength;
  double location;
};

std::vector<DeltaOnGrid> deltas_on_grid(const PotentialSpec& spec,
                                        const UniformGrid& g) {
  std::vector<DeltaOnGrid> d;
  for (const DeltaTerm& t : spec.deltas) {
    if (!g.has_point(t.location))
      throw std::invalid_argument("jost: delta location off the x grid");
    d.push_back({g.nearest_index(t.location), t.strength, t.location});
  }
  return d;
}

// Backward sweep for m1 at one k.  The Volterra tail splits into
//   m1(x) = 1 + sum_j c_j D_k(y_j - x) m1(y_j)
//         + (e^{-ax}/a) J(x) - K(x)/a,      a = 2ik,
// with J = int_x^inf e^{ay} V m1 dy and K = int_x^inf V m1 dy accumulated
// cell by cell with product weights (exact for e^{ay} times piecewise-linear
// data), so the cost per k is O(n) and accuracy is uniform in k.
void sweep_m1(const PotentialSpec& spec, const std::vector<DeltaOnGrid>& deltas,
              const UniformGrid& g, double k, cplx* out) {
  const std::size_t n = g.n;
  const double h = g.dx;
  const bool zero_k = (k == 0.0);
  const cplx a = 2.0i * k;
  const auto [wa, wb] = product_weights(a, h);
  const cplx alpha = zero_k ? cplx{0.0, 0.0} : (wa - 0.5 * h) / a;

  std::vector<double> vreg(n);
  bool any_reg = !spec.regular.is_zero();
  for (std::size_t i = 0; i < n; ++i) vreg[i] = any_reg ? spec.regular(g[i]) : 0.0;

  cplx tailJ = 0.0, tailK = 0.0;
  out[n - 1] = 1.0;
  cplx u_next = vreg[n - 1];  // V m at x_{i+1}

  for (std::size_t ii = n - 1; ii-- > 0;) {
    const std::size_t i = ii;
    const double xi = g[i];
    cplx rhs = 1.0;
    for (const DeltaOnGrid& d : deltas)
      if (d.location > xi)
        rhs += d.strength * dk_kernel(k, d.location - xi) * out[d.index];
    if (any_reg) {
      if (zero_k) {
        // int (y - x) V m dy, J = int y V m dy
        rhs += (tailJ + 0.5 * h * g[i + 1] * u_next) -
               xi * (tailK + 0.5 * h * u_next);
        out[i] = rhs;
      } else {
        rhs += std::exp(-a * xi) / a * tailJ + (wb / a) * u_next - tailK / a -
               (0.5 * h / a) * u_next;
        out[i] = rhs / (1.0 - vreg[i] * alpha);
      }
      const cplx u_i = vreg[i] * out[i];
      if (zero_k) {
        tailJ += 0.5 * h * (g[i] * u_i + g[i + 1] * u_next);
        tailK += 0.5 * h * (u_i + u_next);
      } else {
        tailJ += std::exp(a * xi) * (wa * u_i + wb * u_next);
        tailK += 0.5 * h * (u_i + u_next);
      }
      u_next = u_i;
    } else {
      out[i] = rhs;
    }
  }
}

// Forward sweep for m2; by the substitution s -> h - s the unknown-endpoint
// weights coincide with the m1 case.
void sweep_m2(const PotentialSpec& spec, const std::vector<DeltaOnGrid>& deltas,
              const UniformGrid& g, double k, cplx* out) {
  const std::size_t n = g.n;
  const double h = g.dx;
  const bool zero_k = (k == 0.0);
  const cplx a = 2.0i * k;   // phase of m2(x) prefactor e^{ax}
  const cplx am = -a;        // cell phases carry e^{-2iky}
  const auto [wa, wb] = product_weights(a, h);
  const auto [wam, wbm] = product_weights(am, h);
  const cplx alpha = zero_k ? cplx{0.0, 0.0} : (wa - 0.5 * h) / a;

  std::vector<double> vreg(n);
  bool any_reg = !spec.regular.is_zero();
  for (std::size_t i = 0; i < n; ++i) vreg[i] = any_reg ? spec.regular(g[i]) : 0.0;

  cplx tailJ = 0.0, tailK = 0.0;  // J = int_-inf^x e^{-ay} V m dy
  out[0] = 1.0;
  cplx u_prev = vreg[0];

  for (std::size_t i = 1; i < n; ++i) {
    const double xi = g[i];
    cplx rhs = 1.0;
    for (const DeltaOnGrid& d : deltas)
      if (d.location < xi)
        rhs += d.strength * dk_kernel(k, xi - d.location) * out[d.index];
    if (any_reg) {
      if (zero_k) {
        // int (x - y) V m dy, J = int y V m dy
        rhs += xi * (tailK + 0.5 * h * u_prev) -
               (tailJ + 0.5 * h * g[i - 1] * u_prev);
        out[i] = rhs;
      } else {
        // known contributions: previous tails plus the u_{i-1} cell part
        // e^{a x_i}/a * e^{-a x_{i-1}} wa(-a) u_prev = wb(a)/a u_prev
        rhs += std::exp(a * xi) / a * tailJ + (wb / a) * u_prev - tailK / a -
               (0.5 * h / a) * u_prev;
        out[i] = rhs / (1.0 - vreg[i] * alpha);
      }
      const cplx u_i = vreg[i] * out[i];
      if (zero_k) {
        tailJ += 0.5 * h * (g[i] * u_i + g[i - 1] * u_prev);
        tailK += 0.5 * h * (u_i + u_prev);
      } else {
        tailJ += std::exp(am * g[i - 1]) * (wam * u_prev + wbm * u_i);
        tailK += 0.5 * h * (u_prev + u_i);
      }
      u_prev = u_i;
    } else {
      out[i] = rhs;
    }
  }
}

void require_coverage(const PotentialSpec& spec, const UniformGrid& g) {
  const double a = spec.support_radius();
  if (g.n < 9 || g.front() > -a || g.back() < a)
    throw std::invalid_argument("jost: x grid must cover the potential support");
}

}  // namespace

JostSolution solve_jost(const PotentialSpec& spec, std::span<const double> k_grid,
                        const UniformGrid& x_grid, const JostOptions& opts) {
  require_coverage(spec, x_grid);
  const auto deltas = deltas_on_grid(spec, x_grid);

  JostSolution sol;
  sol.spec = spec;
  sol.x = x_grid;
  sol.k.assign(k_grid.begin(), k_grid.end());

  if (opts.solve_m1) sol.m1.resize(sol.nk() * sol.nx());
  if (opts.solve_m2) sol.m2.resize(sol.nk() * sol.nx());

  for (std::size_t j = 0; j < sol.nk(); ++j) {
    if (opts.solve_m1) sweep_m1(spec, deltas, x_grid, sol.k[j], &sol.m1[j * sol.nx()]);
    if (opts.solve_m2) sweep_m2(spec, deltas, x_grid, sol.k[j], &sol.m2[j * sol.nx()]);
  }

  if (opts.richardson_check && x_grid.n > 16 && x_grid.n % 2 == 1 &&
      !spec.regular.is_zero()) {
    UniformGrid coarse{x_grid.x0, 2.0 * x_grid.dx, (x_grid.n + 1) / 2};
    bool aligned = true;
    for (const DeltaTerm& d : spec.deltas)
      if (!coarse.has_point(d.location)) aligned = false;
    if (aligned) {
      const auto cd = deltas_on_grid(spec, coarse);
      std::vector<cplx> buf(coarse.n);
      const std::size_t stride = std::max<std::size_t>(1, sol.nk() / 8);
      for (std::size_t j = 0; j < sol.nk(); j += stride) {
        if (opts.solve_m1) {
          sweep_m1(spec, cd, coarse, sol.k[j], buf.data());
          for (std::size_t i = 0; i < coarse.n; ++i)
            sol.richardson_m1 = std::max(
                sol.richardson_m1, std::abs(buf[i] - sol.m1_at(j, 2 * i)) / 3.0);
        }
        if (opts.solve_m2) {
          sweep_m2(spec, cd, coarse, sol.k[j], buf.data());
          for (std::size_t i = 0; i < coarse.n; ++i)
            sol.richardson_m2 = std::max(
                sol.richardson_m2, std::abs(buf[i] - sol.m2_at(j, 2 * i)) / 3.0);
        }
      }
      if (std::max(sol.richardson_m1, sol.richardson_m2) > opts.richardson_tol)
        throw std::runtime_error("jost: grid too coarse (Richardson estimate)");
    }
  }
  return sol;
}

FixedPointResult solve_m1_fixed_point(const PotentialSpec& spec, double k,
                                      const UniformGrid& x_grid, double tol,
                                      int max_iter) {
  require_coverage(spec, x_grid);
  const auto deltas = deltas_on_grid(spec, x_grid);
  const std::size_t n = x_grid.n;
  const double h = x_grid.dx;
  const cplx a = 2.0i * k;
  const auto [wa, wb] = product_weights(a, h);

  std::vector<double> vreg(n);
  for (std::size_t i = 0; i < n; ++i) vreg[i] = spec.regular(x_grid[i]);

  FixedPointResult res;
  res.m1.assign(n, cplx{1.0, 0.0});
  std::vector<cplx> next(n);

  for (int it = 0; it < max_iter; ++it) {
    cplx tailJ = 0.0, tailK = 0.0;
    next[n - 1] = 1.0;
    for (std::size_t ii = n - 1; ii-- > 0;) {
      const std::size_t i = ii;
      const cplx u_i = vreg[i] * res.m1[i];
      const cplx u_n = vreg[i + 1] * res.m1[i + 1];
      if (k == 0.0) {
        tailJ += 0.5 * h * (x_grid[i] * u_i + x_grid[i + 1] * u_n);
        tailK += 0.5 * h * (u_i + u_n);
      } else {
        tailJ += std::exp(a * x_grid[i]) * (wa * u_i + wb * u_n);
        tailK += 0.5 * h * (u_i + u_n);
      }
      cplx acc = 1.0;
      for (const DeltaOnGrid& d : deltas)
        if (d.location > x_grid[i])
          acc += d.strength * dk_kernel(k, d.location - x_grid[i]) * res.m1[d.index];
      if (k == 0.0)
        acc += tailJ - x_grid[i] * tailK;
      else
        acc += std::exp(-a * x_grid[i]) / a * tailJ - tailK / a;
      next[i] = acc;
    }
    double resid = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      resid = std::max(resid, std::abs(next[i] - res.m1[i]));
    res.m1.swap(next);
    res.iterations = it + 1;
    res.residual = resid;
    if (resid < tol) return res;
  }
  throw std::runtime_error("jost: fixed-point iteration did not converge");
}

double k0_exact(const PotentialSpec& spec, double x, double y) {
  return signed_tail(spec, x + y);
}

cplx k0_transform(const PotentialSpec& spec, double x, double k) {
  cplx s = 0.0;
  // delta part: int_0^inf c_j 1[x + y < y_j] e^{2iky} dy = c_j D_k(y_j - x)
  for (const DeltaTerm& d : spec.deltas)
    if (d.location > x) s += d.strength * dk_kernel(k, d.location - x);
  if (spec.regular.is_zero()) return s;

  // regular part: integrate by parts once,
  //   int_0^inf tail(x+y) e^{2iky} dy = int_0^inf D_k(y) V_reg(x+y) dy
  if (spec.regular.kind() == RegularPart::Kind::Box) {
    // closed form: V0 int_alpha^beta D_k(y) dy
    const double v0 = spec.regular.params()[0];
    const double lo = spec.regular.params()[1], hi = spec.regular.params()[2];
    const double alpha = std::max(0.0, lo - x);
    const double beta = std::max(0.0, hi - x);
    if (beta > alpha) {
      const cplx a = 2.0i * k;
      if (std::abs(a) * std::max(std::abs(alpha), std::abs(beta)) < 1e-4) {
        // D_k ~ y + a y^2/2: integral ~ (beta^2 - alpha^2)/2 + a(beta^3-alpha^3)/6
        s += v0 * (0.5 * (beta * beta - alpha * alpha) +
                   a * (beta * beta * beta - alpha * alpha * alpha) / 6.0);
      } else {
        const cplx int_dk =
            (std::exp(a * beta) - std::exp(a * alpha)) / (a * a) - (beta - alpha) / a;
        s += v0 * int_dk;
      }
    }
    return s;
  }

  const double R = spec.regular.envelope_radius();
  if (R > x) {
    auto fr = [&](double y) { return std::real(dk_kernel(k, y) * spec.regular(x + y)); };
    auto fi = [&](double y) { return std::imag(dk_kernel(k, y) * spec.regular(x + y)); };
    std::vector<double> bp;
    for (double b : spec.regular.breakpoints()) bp.push_back(b - x);
    const double re = integrate_or_throw(fr, 0.0, R - x, bp, 1e-12, 1e-10);
    const double im = integrate_or_throw(fi, 0.0, R - x, bp, 1e-12, 1e-10);
    s += cplx{re, im};
  }
  return s;
}

std::vector<double> uniform_k_grid(double kmax, std::size_t n) {
  if (!(kmax > 0.0) || n < 4 || n % 2 != 0)
    throw std::invalid_argument("uniform_k_grid: need kmax > 0 and even n");
  std::vector<double> k(n);
  const double dk = 2.0 * kmax / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) k[j] = dk * (static_cast<double>(j) - n / 2.0);
  k[n / 2] = 0.0;
  return k;
}

B1Result b1_from_m1(const JostSolution& jost, double aliasing_threshold) {
  const std::size_t nk = jost.nk(), nx = jost.nx();
  if (jost.m1.empty()) throw std::invalid_argument("b1_from_m1: m1 not solved");
  if (nk < 8) throw std::invalid_argument("b1_from_m1: k grid too small");
  const double dk = jost.k[1] - jost.k[0];
  const double kmax = -jost.k[0];
  for (std::size_t j = 1; j < nk; ++j)
    if (std::abs(jost.k[j] - (jost.k[0] + dk * static_cast<double>(j))) > 1e-9 * dk)
      throw std::invalid_argument("b1_from_m1: k grid must be uniform");
  if (std::abs(jost.k[nk / 2]) > 1e-12)
    throw std::invalid_argument("b1_from_m1: k grid must be symmetric about 0");

  B1Result out;
  B1Kernel& b1 = out.kernel;
  b1.x = jost.x;
  b1.dy = pi / (2.0 * kmax);
  const std::size_t ny = nk / 2;  // y_max = pi / (2 dk)
  b1.y.resize(ny);
  for (std::size_t m = 0; m < ny; ++m) b1.y[m] = b1.dy * static_cast<double>(m);
  b1.values.assign(nx * ny, cplx{0.0, 0.0});

  std::vector<cplx> row(nk);
  for (std::size_t i = 0; i < nx; ++i) {
    const double x = jost.x[i];
    // remainder after removing the exactly transformable K0 part
    for (std::size_t j = 0; j < nk; ++j)
      row[j] = jost.m1_at(j, i) - 1.0 - k0_transform(jost.spec, x, jost.k[j]);
    out.max_boundary_residual =
        std::max(out.max_boundary_residual,
                 std::max(std::abs(row[0]), std::abs(row[nk - 1])));
    // B1(x, y_m) = K0(x, y_m) + (dk/pi) (-1)^m sum_j row_j e^{-2pi i jm/N}
    dft(row, -1);
    for (std::size_t m = 0; m < ny; ++m) {
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      b1.values[i * ny + m] =
          k0_exact(jost.spec, x, b1.y[m]) + (dk / pi) * sign * row[m];
    }
  }
  out.aliasing_warning = out.max_boundary_residual > aliasing_threshold;

  // d/dx along rows, 4th order in the interior
  b1.dx_values.assign(nx * ny, cplx{0.0, 0.0});
  const double h = jost.x.dx;
  for (std::size_t m = 0; m < ny; ++m) {
    auto v = [&](std::size_t i) { return b1.values[i * ny + m]; };
    for (std::size_t i = 0; i < nx; ++i) {
      cplx d;
      if (i >= 2 && i + 2 < nx)
        d = (-v(i + 2) + 8.0 * v(i + 1) - 8.0 * v(i - 1) + v(i - 2)) / (12.0 * h);
      else if (i >= 1 && i + 1 < nx)
        d = (v(i + 1) - v(i - 1)) / (2.0 * h);
      else if (i == 0)
        d = (v(1) - v(0)) / h;
      else
        d = (v(i) - v(i - 1)) / h;
      b1.dx_values[i * ny + m] = d;
    }
  }
  return out;
}

cplx m1_from_b1(const B1Kernel& b1, const PotentialSpec& spec, std::size_t xi,
                double k) {
  // rectangle weights: the exact inverse of the sampling DFT when k is a
  // node of the grid that produced the kernel
  const std::size_t ny = b1.y.size();
  cplx s = 0.0;
  for (std::size_t m = 0; m < ny; ++m) {
    const cplx rem = b1.at(xi, m) - k0_exact(spec, b1.x[xi], b1.y[m]);
    s += rem * std::exp(2.0i * k * b1.y[m]);
  }
  return 1.0 + k0_transform(spec, b1.x[xi], k) + s * b1.dy;
}

KnSeries kn_series(const PotentialSpec& spec, const UniformGrid& x_grid,
                   std::size_t ny, std::size_t n_max) {
  require_coverage(spec, x_grid);
  const double h = x_grid.dx;
  const std::size_t nx = x_grid.n;

  KnSeries out;
  out.x = x_grid;
  out.y.resize(ny);
  for (std::size_t m = 0; m < ny; ++m) out.y[m] = h * static_cast<double>(m);
  out.kn.assign(n_max + 1, std::vector<double>(nx * ny, 0.0));

  // K0: half-convention values for reporting, strict (open) representative
  // inside the recursion quadratures so that measure-zero boundary sets do
  // not contribute
  std::vector<double> kq(nx * ny, 0.0);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t m = 0; m < ny; ++m) {
      out.kn[0][i * ny + m] = signed_tail(spec, x_grid[i] + out.y[m]);
      kq[i * ny + m] = signed_tail_strict(spec, x_grid[i] + out.y[m]);
    }

  for (std::size_t n = 0; n < n_max; ++n) {
    const std::vector<double>& K = (n == 0) ? kq : out.kn[n];
    std::vector<double>& Knext = out.kn[n + 1];

    // W(s, z) = int_s^inf V(t) K_n(t, z) dt on the aligned lattice
    std::vector<double> W(nx * ny, 0.0);
    if (!spec.regular.is_zero()) {
      for (std::size_t zi = 0; zi < ny; ++zi) {
        double acc = 0.0;
        double prev = spec.regular(x_grid[nx - 1]) * K[(nx - 1) * ny + zi];
        for (std::size_t ii = nx - 1; ii-- > 0;) {
          const double cur = spec.regular(x_grid[ii]) * K[ii * ny + zi];
          acc += 0.5 * h * (cur + prev);
          W[ii * ny + zi] = acc;
          prev = cur;
        }
      }
    }
    auto w_at = [&](double s, std::size_t zi) -> double {
      double v = 0.0;
      if (!spec.regular.is_zero()) {
        if (s <= x_grid.front())
          v = W[zi];
        else if (s < x_grid.back())
          v = W[x_grid.nearest_index(s) * ny + zi];
      }
      for (const DeltaTerm& d : spec.deltas)
        if (d.location > s)
          v += d.strength * K[x_grid.nearest_index(d.location) * ny + zi];
      return v;
    };

    for (std::size_t i = 0; i < nx; ++i) {
      const double x = x_grid[i];
      for (std::size_t m = 1; m < ny; ++m) {
        const double y = out.y[m];
        double acc = 0.0;
        for (std::size_t zi = 0; zi <= m; ++zi) {
          const double w = (zi == 0 || zi == m) ? 0.5 : 1.0;
          acc += w * w_at(x + y - out.y[zi], zi);
        }
        Knext[i * ny + m] = acc * h;
      }
    }
  }

  out.partial_sum.assign(nx * ny, 0.0);
  for (const auto& K : out.kn)
    for (std::size_t p = 0; p < K.size(); ++p) out.partial_sum[p] += K[p];
  for (double v : out.kn[n_max]) out.tail_sup = std::max(out.tail_sup, std::abs(v));
  return out;
}

KernelBoundReport verify_kernel_bounds(const PotentialSpec& spec,
                                       const B1Kernel& b1) {
  KernelBoundReport rep;
  const std::size_t ny = b1.y.size();
  std::vector<double> lines;
  for (const DeltaTerm& d : spec.deltas) lines.push_back(d.location);
  for (double b : spec.regular.breakpoints()) lines.push_back(b);
  const double safety = 4.0 * std::max(b1.x.dx, b1.dy);

  for (std::size_t i = 0; i < b1.x.n; ++i) {
    const double x = b1.x[i];
    const double gfac = std::exp(gamma1(spec, x));
    for (std::size_t m = 0; m < ny; ++m) {
      const double s = x + b1.y[m];
      bool near = false;
      for (double L : lines)
        if (std::abs(s - L) < safety) near = true;
      if (near) continue;
      const double tail = abs_tail(spec, s);
      const double maj = gfac * tail;
      if (maj > 1e-14) {
        rep.c_b1 = std::max(rep.c_b1, std::abs(b1.at(i, m)) / maj);
        ++rep.points_checked;
      }
      const double maj2 = gfac * (std::abs(spec.regular(s)) + tail);
      if (maj2 > 1e-14)
        rep.c_b1_prime = std::max(rep.c_b1_prime, std::abs(b1.dx_at(i, m)) / maj2);
    }
  }
  rep.vacuous = rep.points_checked == 0;
  return rep;
}

namespace {

cplx dk_derivative(const JostSolution& jost, const std::vector<cplx>& field,
                   std::size_t ki, std::size_t xi) {
  const std::size_t nk = jost.nk(), nx = jost.nx();
  const double dk = jost.k[1] - jost.k[0];
  auto v = [&](std::size_t j) { return field[j * nx + xi]; };
  if (ki >= 2 && ki + 2 < nk)
    return (-v(ki + 2) + 8.0 * v(ki + 1) - 8.0 * v(ki - 1) + v(ki - 2)) / (12.0 * dk);
  if (ki >= 1 && ki + 1 < nk) return (v(ki + 1) - v(ki - 1)) / (2.0 * dk);
  if (ki == 0) return (v(1) - v(0)) / dk;
  return (v(ki) - v(ki - 1)) / dk;
}

cplx dx_derivative(const JostSolution& jost, const std::vector<cplx>& field,
                   std::size_t ki, std::size_t xi,
                   const std::vector<std::size_t>& delta_idx) {
  const std::size_t nx = jost.nx();
  const double h = jost.x.dx;
  auto v = [&](std::size_t i) { return field[ki * nx + i]; };
  bool central_ok = xi >= 2 && xi + 2 < nx;
  if (central_ok)
    for (std::size_t d : delta_idx)
      if (d != xi && d + 2 >= xi && d <= xi + 2) central_ok = false;
  if (central_ok) {
    bool at_delta =
        std::find(delta_idx.begin(), delta_idx.end(), xi) != delta_idx.end();
    if (!at_delta)
      return (-v(xi + 2) + 8.0 * v(xi + 1) - 8.0 * v(xi - 1) + v(xi - 2)) / (12.0 * h);
  }
  auto clear_of_deltas = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t d : delta_idx)
      if (d >= lo && d <= hi && d != xi) return false;
    return true;
  };
  if (xi + 2 < nx && clear_of_deltas(xi + 1, xi + 2))
    return (-3.0 * v(xi) + 4.0 * v(xi + 1) - v(xi + 2)) / (2.0 * h);
  if (xi >= 2 && clear_of_deltas(xi - 2, xi - 1))
    return (3.0 * v(xi) - 4.0 * v(xi - 1) + v(xi - 2)) / (2.0 * h);
  if (xi + 1 < nx) return (v(xi + 1) - v(xi)) / h;
  return (v(xi) - v(xi - 1)) / h;
}

}  // namespace

MBoundReport verify_m_bounds(const PotentialSpec& spec, const JostSolution& jost,
                             double a) {
  // a must clear the singular support (the delta locations); the regular
  // part may extend past a, which is what makes the weighted-tail ratios
  // non-vacuous for compactly supported V_reg
  double sing_radius = 0.0;
  for (const DeltaTerm& d : spec.deltas)
    sing_radius = std::max(sing_radius, std::abs(d.location));
  if (a < sing_radius - 1e-12)
    throw std::invalid_argument("verify_m_bounds: need a >= max |y_j|");
  MBoundReport rep;
  rep.a = a;
  std::vector<std::size_t> didx;
  for (const DeltaTerm& d : spec.deltas)
    didx.push_back(jost.x.nearest_index(d.location));

  const std::size_t nk = jost.nk(), nx = jost.nx();
  for (std::size_t ki = 0; ki < nk; ++ki) {
    const double absk = std::abs(jost.k[ki]);
    for (std::size_t xi = 0; xi < nx; ++xi) {
      const double x = jost.x[xi];
      if (!jost.m1.empty() && x >= a) {
        const double dev = std::abs(jost.m1_at(ki, xi) - 1.0);
        rep.m1_sup_deviation = std::max(rep.m1_sup_deviation, dev);
        const double maj = reg_weighted_tail_right(spec, x) / (1.0 + absk);
        if (maj > 1e-14) {
          const double q = dev + std::abs(dk_derivative(jost, jost.m1, ki, xi)) +
                           std::abs(dx_derivative(jost, jost.m1, ki, xi, didx));
          rep.c_m1 = std::max(rep.c_m1, q / maj);
          rep.m1_vacuous = false;
        }
      }
      if (!jost.m2.empty() && x <= -a) {
        const double dev = std::abs(jost.m2_at(ki, xi) - 1.0);
        rep.m2_sup_deviation = std::max(rep.m2_sup_deviation, dev);
        const double maj = reg_weighted_tail_left(spec, x) / (1.0 + absk);
        if (maj > 1e-14) {
          const double q = dev + std::abs(dk_derivative(jost, jost.m2, ki, xi)) +
                           std::abs(dx_derivative(jost, jost.m2, ki, xi, didx));
          rep.c_m2 = std::max(rep.c_m2, q / maj);
          rep.m2_vacuous = false;
        }
      }
      if (std::abs(x) <= a) {
        for (const auto* field : {&jost.m1, &jost.m2}) {
          if (field->empty()) continue;
          rep.compact_sup_m =
              std::max(rep.compact_sup_m, std::abs((*field)[ki * nx + xi]));
          rep.compact_sup_dxm = std::max(
              rep.compact_sup_dxm, std::abs(dx_derivative(jost, *field, ki, xi, didx)));
          rep.compact_sup_dkm = std::max(
              rep.compact_sup_dkm, std::abs(dk_derivative(jost, *field, ki, xi)));
        }
      }
    }
  }
  return rep;
}

JostScatteringPoint scattering_from_jost(const JostSolution& jost, std::size_t ki) {
  if (jost.m1.empty() || jost.m2.empty())
    throw std::invalid_argument("scattering_from_jost: need both m1 and m2");
  const double k = jost.k[ki];
  if (k == 0.0) throw std::domain_error("scattering_from_jost: k = 0");
  const std::size_t nx = jost.nx();
  // evaluation point farthest from every delta (clean central stencils)
  std::size_t xi = nx / 2;
  double best = -1.0;
  for (std::size_t i = 2; i + 2 < nx; ++i) {
    double dist = 1e300;
    for (const DeltaTerm& d : jost.spec.deltas)
      dist = std::min(dist, std::abs(jost.x[i] - d.location));
    if (dist > best) {
      best = dist;
      xi = i;
    }
  }
  const double h = jost.x.dx;
  auto f1 = [&](std::size_t i) {
    return std::exp(1.0i * k * jost.x[i]) * jost.m1_at(ki, i);
  };
  auto f2 = [&](std::size_t i) {
    return std::exp(-1.0i * k * jost.x[i]) * jost.m2_at(ki, i);
  };
  auto d4 = [&](auto&& f) {
    return (-f(xi + 2) + 8.0 * f(xi + 1) - 8.0 * f(xi - 1) + f(xi - 2)) / (12.0 * h);
  };
  const cplx f1v = f1(xi), f2v = f2(xi);
  const cplx f1p = d4(f1), f2p = d4(f2);
  const cplx w12 = f1v * f2p - f1p * f2v;  // = -2ik/T
  JostScatteringPoint out;
  out.T = -2.0i * k / w12;
  const cplx f1mv = std::conj(f1v), f1mp = std::conj(f1p);  // f1(x,-k), real V
  const cplx w2m = f2v * f1mp - f2p * f1mv;                 // = (R1/T)(-2ik)
  out.R1 = out.T * w2m / (-2.0i * k);
  return out;
}

}  // namespace scat1d
