#pragma once

// Exact scattering for delta potentials via 2x2 complex transfer matrices,
// closed-form single/double-delta coefficients, bound-state search on the
// analytically continued matrix, and an ODE path for delta + regular mixes.
//
// Conventions: H = -d^2/dx^2 + sum_j c_j delta(x - y_j) + V_reg with
// (H - k^2) u = 0.  T = transmission; R1 = reflection for incidence from
// +inf (appears at +inf); R2 = reflection for incidence from -inf.

#include <span>
#include <utility>
#include <vector>

#include "scat1d/grid.hpp"
#include "scat1d/potential.hpp"

namespace scat1d {

// Row-major [[a, b], [c, d]] acting on plane-wave amplitude pairs (A, B)
// of A e^{ikx} + B e^{-ikx}.
struct Mat2c {
  cplx a{1.0, 0.0}, b{0.0, 0.0}, c{0.0, 0.0}, d{1.0, 0.0};

  Mat2c operator*(const Mat2c& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d,
            c * o.a + d * o.c, c * o.b + d * o.d};
  }
  std::pair<cplx, cplx> apply(cplx A, cplx B) const {
    return {a * A + b * B, c * A + d * B};
  }
  cplx det() const { return a * d - b * c; }
};

// Amplitude map across a single delta of strength c at y; unit determinant.
Mat2c delta_jump_matrix(double strength, double location, cplx k);

// Product over all deltas, far left to far right.  Pure-delta specs only.
// Throws std::domain_error at k = 0 and std::invalid_argument for specs
// with a regular part.
Mat2c transfer_matrix_at(const PotentialSpec& spec, cplx k);

struct TRPoint {
  cplx T, R1, R2;
};

// T, R from the transfer matrix at one real k (pure delta).
TRPoint scattering_point(const PotentialSpec& spec, double k);

struct ScatteringData {
  std::vector<double> k_grid;  // sorted, nonzero
  std::vector<cplx> T, R1, R2;
  std::vector<double> bound_state_kappas;
};

ScatteringData scattering_coeffs(const PotentialSpec& spec,
                                 std::span<const double> k_grid);

// Printed closed forms for H_{q,L} = -q(delta(x+L) + delta(x-L)); returns
// (T, R1).  Equivalent to the transfer-matrix path with deltas c = -2q at
// +-L.  Throws std::domain_error at k = 0.
std::pair<cplx, cplx> double_delta_closed_form(double q, double L, double k);

// Per-interval plane-wave amplitudes of a distorted wave (pure delta).
// Interval j is (y_{j-1}, y_j); A.size() == deltas + 1.
struct PlaneWaveCoefficients {
  std::vector<cplx> A, B;
};

PlaneWaveCoefficients eplus_coefficients(const PotentialSpec& spec, double k);
PlaneWaveCoefficients eminus_coefficients(const PotentialSpec& spec, double k);

cplx eval_piecewise_wave(const PlaneWaveCoefficients& cf,
                         std::span<const double> locations, double k, double x);

struct TdotReport {
  double sup_scaled_large_k = 0.0;  // sup over k in [1e2, 1e4] of |t'| * |k|
  bool large_k_bounded = false;
  double tdot_small_k = 0.0;        // |t'(k)| extrapolated to k -> 0
  double small_k_scale = 0.0;       // 1 / |4 q^2 L - 2 q|
  double small_k_ratio = 0.0;       // tdot_small_k / small_k_scale
  bool small_k_finite = false;
  bool ok = false;
};

// Numerical check of the double-delta t'(k) asymptotics.  Throws
// std::domain_error for the resonant configuration |qL - 1/2| < 1e-6.
TdotReport tdot_asymptotics_check(double q, double L);

// L^2-normalized bound state u = A_j e^{-kappa x} + B_j e^{kappa x} per
// interval; eigenvalue E = -kappa^2.
struct BoundState {
  double kappa = 0.0;
  std::vector<double> locations;           // delta positions
  std::vector<std::pair<double, double>> coeffs;  // (A_j, B_j), real at k = i kappa
  double eval(double x) const;
  double energy() const { return -kappa * kappa; }
  GridFunction sample(const UniformGrid& g) const;  // with kink metadata
};

// Exact int u v dx over the line (piecewise closed form).
double exact_inner(const BoundState& u, const BoundState& v);

// All kappa > 0 with 1/T(i kappa) = 0, ascending.  Pure-delta specs.
std::vector<BoundState> bound_states(const PotentialSpec& spec);

// Scattering for delta + compactly-supported regular potentials: adaptive
// Runge-Kutta across regular regions, exact jumps at deltas.  Reduces to
// scattering_coeffs when the regular part vanishes.
struct MixedResult {
  ScatteringData data;
  double max_T_mismatch = 0.0;      // f1- vs f2-route transmission
  double max_wronskian_drift = 0.0; // |W(x_L) - W(x_R)| / |W|
};

MixedResult mixed_scattering(const PotentialSpec& spec,
                             std::span<const double> k_grid);

// 2048 log+linear mixed nodes over [kmin, kmax] (positive branch; negative
// k values are recovered by conjugation symmetry).
std::vector<double> default_k_grid(double kmin = 1e-3, double kmax = 1e3,
                                   std::size_t n = 2048);

}  // namespace scat1d
