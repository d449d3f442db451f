#pragma once

// Wave operators W+ = F_+^* F and W+^* = F^{-1} F_+ on the shared quadrature
// nodes, together with the proof-machinery diagnostics: Hilbert transform,
// smooth frequency cutoffs, the S_1 kernel built from B1, Young constants,
// Sobolev-ratio studies and the Borel-calculus intertwining residual.

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "scat1d/grid.hpp"
#include "scat1d/jost.hpp"
#include "scat1d/spectral.hpp"

namespace scat1d {

struct FrequencyCutoff {
  double k0 = 1.0;
  // 1 for |k| <= k0, 0 for |k| >= 2 k0, order-5 smoothstep between
  double operator()(double k) const;
};

GridFunction apply_wplus(const SpectralDecomposition& d, const GridFunction& f);
GridFunction apply_wplus_star(const SpectralDecomposition& d, const GridFunction& f);

// multiplier -i sgn(k) on a zero-padded periodic extension; sgn(0) = 0
GridFunction hilbert_transform(const GridFunction& f);

// f = low + high exactly on the grid
std::pair<GridFunction, GridFunction> frequency_split(const GridFunction& f,
                                                      const FrequencyCutoff& cutoff);

// parity P f(x) = f(-x); requires a symmetric grid
GridFunction parity(const GridFunction& f);

// project f onto the table's k band (pre-filter for band-limit preconditions)
GridFunction band_limit(const SpectralDecomposition& d, const GridFunction& f);

struct KernelOperator {
  UniformGrid rows;            // x
  UniformGrid cols;            // y
  std::vector<cplx> a;         // row-major A(x, y)
  cplx at(std::size_t i, std::size_t j) const { return a[i * cols.n + j]; }
};

// A(x,y) = 1[y >= x] B1(x, (y-x)/2) from the tabulated kernel (which = 1);
// which = 2 gives the d/dx companion used for the W^{1,p} estimate.
KernelOperator sj_kernel(const B1Kernel& b1, int which = 1);

// C_A = sup_x int |A| dy + sup_y int |A| dx (discrete)
double young_constant(const KernelOperator& op);

// (S_A phi)(x) = int A(x,y) phi(y) dy
GridFunction apply_kernel(const KernelOperator& op, const GridFunction& phi);

// max over the family of ||W+ f||_{W^{1,p}} / ||f||_{W^{1,p}}; p > 1
double sobolev_ratio(const SpectralDecomposition& d, double p,
                     std::span<const GridFunction> family);

// || borel(H) P_c f - W+ borel(H0) W+^* f ||_2 / ||f||_2
double intertwining_check(const SpectralDecomposition& d, const GridFunction& f,
                          const std::function<cplx(double)>& borel);

// discrete W^{1,p} norm: ||f||_p + ||f'||_p with one-sided stencils at the
// given kink locations
double sobolev_norm(const GridFunction& f, double p,
                    std::span<const double> kink_locations);

// seeded band-limited test family: Gaussians, modulated Gaussians, Hermite
// functions and random band-limited draws, spectra inside [band_lo, band_hi]
std::vector<GridFunction> probe_family(const UniformGrid& g, double band_lo,
                                       double band_hi, std::size_t count,
                                       unsigned seed);

// reassembles W+ (psi(|D| <= k0) f) for x >= 0 from the six-term low-frequency
// decomposition (multipliers T, R1 P, cutoff, and the (m1 - 1) factors) and
// returns the sup deviation from apply_wplus on x >= 0
double six_term_lowpass_residual(const SpectralDecomposition& d,
                                 const GridFunction& f, double k0);

}  // namespace scat1d
