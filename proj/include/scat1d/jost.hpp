#pragma once

// Jost solutions m1, m2 from their Volterra equations
//   m1(x,k) = 1 + int_x^inf  D_k(y-x) V(y) m1(y,k) dy,
//   m2(x,k) = 1 + int_-inf^x D_k(x-y) V(y) m2(y,k) dy,
// solved by direct backward/forward sweeps with product (Filon-type)
// trapezoidal quadrature, so accuracy is uniform in k.  Deltas contribute
// exact point terms c_j D_k(|y_j - x|) m(y_j,k).
//
// B1 is the y-representation m1(x,k) = 1 + int_0^inf B1(x,y) e^{2iky} dy.
// The transform route splits off the exactly known leading term K0
// (K0hat below) and inverts only the smooth remainder by FFT.

#include <cstddef>
#include <span>
#include <vector>

#include "scat1d/grid.hpp"
#include "scat1d/potential.hpp"

namespace scat1d {

// D_k(x) = int_0^x e^{2iky} dy; equals x at k = 0 (continuous limit).
cplx dk_kernel(cplx k, double x);

struct JostSolution {
  PotentialSpec spec;
  UniformGrid x;
  std::vector<double> k;   // sorted; uniform spacing required for k-derivatives
  std::vector<cplx> m1;    // row-major [k][x]; empty if not solved
  std::vector<cplx> m2;
  double richardson_m1 = 0.0;  // coarse-grid comparison estimates
  double richardson_m2 = 0.0;

  std::size_t nx() const { return x.n; }
  std::size_t nk() const { return k.size(); }
  cplx m1_at(std::size_t ki, std::size_t xi) const { return m1[ki * x.n + xi]; }
  cplx m2_at(std::size_t ki, std::size_t xi) const { return m2[ki * x.n + xi]; }
};

struct JostOptions {
  bool richardson_check = true;
  double richardson_tol = 1e-3;    // grid-too-coarse signal above this
  bool solve_m1 = true;
  bool solve_m2 = true;
};

// Throws std::invalid_argument when the grid does not cover the support or a
// delta location is off-grid, std::runtime_error on the grid-too-coarse
// signal.
JostSolution solve_jost(const PotentialSpec& spec, std::span<const double> k_grid,
                        const UniformGrid& x_grid, const JostOptions& opts = {});

// Fixed-point (Born iteration) cross-check for one k; returns the iterate and
// the final residual.  Throws std::runtime_error on non-convergence.
struct FixedPointResult {
  std::vector<cplx> m1;
  double residual = 0.0;
  int iterations = 0;
};
FixedPointResult solve_m1_fixed_point(const PotentialSpec& spec, double k,
                                      const UniformGrid& x_grid,
                                      double tol = 1e-10, int max_iter = 200);

// K0(x,y) = int_{x+y}^inf V(t) dt (exact; half weight on delta boundaries)
double k0_exact(const PotentialSpec& spec, double x, double y);
// its transform int_0^inf K0(x,y) e^{2iky} dy, closed form
cplx k0_transform(const PotentialSpec& spec, double x, double k);

struct B1Kernel {
  UniformGrid x;                 // rows
  std::vector<double> y;         // uniform, y >= 0
  std::vector<cplx> values;      // row-major [x][y]
  std::vector<cplx> dx_values;   // d/dx B1
  double dy = 0.0;

  cplx at(std::size_t xi, std::size_t yi) const { return values[xi * y.size() + yi]; }
  cplx dx_at(std::size_t xi, std::size_t yi) const { return dx_values[xi * y.size() + yi]; }
};

struct B1Result {
  B1Kernel kernel;
  bool aliasing_warning = false;   // |m1(x, k_max) - 1 - K0hat| too large
  double max_boundary_residual = 0.0;
};

// Requires a uniform symmetric k grid (as from uniform_k_grid below).
B1Result b1_from_m1(const JostSolution& jost, double aliasing_threshold = 1e-4);

// Resynthesize m1(x_i, k) from the kernel (round-trip check).
cplx m1_from_b1(const B1Kernel& b1, const PotentialSpec& spec, std::size_t xi,
                double k);

// k_j = -kmax + j * (2 kmax / n), j = 0..n-1; includes 0, excludes +kmax.
std::vector<double> uniform_k_grid(double kmax, std::size_t n);

struct KnSeries {
  UniformGrid x;
  std::vector<double> y;               // same spacing as x, y >= 0
  std::vector<std::vector<double>> kn; // K_0..K_nmax, row-major [x][y]
  std::vector<double> partial_sum;     // sum_n K_n
  double tail_sup = 0.0;               // ||K_nmax||_inf

  double at(std::size_t n, std::size_t xi, std::size_t yi) const {
    return kn[n][xi * y.size() + yi];
  }
  double sum_at(std::size_t xi, std::size_t yi) const {
    return partial_sum[xi * y.size() + yi];
  }
};

KnSeries kn_series(const PotentialSpec& spec, const UniformGrid& x_grid,
                   std::size_t ny, std::size_t n_max);

struct KernelBoundReport {
  double c_b1 = 0.0;        // sup |B1| / (e^{gamma1} tail)
  double c_b1_prime = 0.0;  // sup |dx B1| / (e^{gamma1} (V(x+y) + tail))
  std::size_t points_checked = 0;
  bool vacuous = false;
};

// Ratios evaluated at grid points where the majorant exceeds 1e-14 and that
// lie away from the discontinuity lines x + y = y_j / box edges.
KernelBoundReport verify_kernel_bounds(const PotentialSpec& spec, const B1Kernel& b1);

struct MBoundReport {
  double a = 0.0;
  double c_m1 = 0.0;           // sup over x >= a of the weighted-tail ratio
  double c_m2 = 0.0;           // mirrored, x <= -a
  bool m1_vacuous = true;      // no admissible points (pure-delta tails vanish)
  bool m2_vacuous = true;
  double m1_sup_deviation = 0.0;  // sup |m1 - 1| on x >= a (trivial-region check)
  double m2_sup_deviation = 0.0;
  double compact_sup_m = 0.0;     // sup |m_j| on |x| <= a
  double compact_sup_dxm = 0.0;
  double compact_sup_dkm = 0.0;
};

MBoundReport verify_m_bounds(const PotentialSpec& spec, const JostSolution& jost,
                             double a);

// T and R1 recovered from solved m1, m2 via Wronskians of f1, f2
// (consistency check against the scattering module).
struct JostScatteringPoint {
  cplx T, R1;
};
JostScatteringPoint scattering_from_jost(const JostSolution& jost, std::size_t ki);

}  // namespace scat1d
