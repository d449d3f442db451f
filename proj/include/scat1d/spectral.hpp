#pragma once

// Distorted plane waves e+-, the normalized generalized eigenfunctions
// Psi_+, the distorted Fourier transform F_+ / adjoint, and the continuous
// spectral projection P_c = F_+^* F_+.
//
// Conventions: Psi_+(x,k) = e_+(x,k)/sqrt(2pi) for k >= 0 and
// e_-(x,-k)/sqrt(2pi) for k < 0.  The ordinary transform pair used alongside
// (fourier_analysis / fourier_synthesis) is the unitary one on the same
// quadrature nodes, so F_+^* F_+ = P_c and adjointness hold on the grid by
// construction.

#include <span>
#include <vector>

#include "scat1d/delta_scattering.hpp"
#include "scat1d/grid.hpp"
#include "scat1d/jost.hpp"
#include "scat1d/potential.hpp"

namespace scat1d {

// Symmetric midpoint band grid: nodes +-(kmin + (j + 1/2) dk); k = 0 is
// excluded by construction and every node carries quadrature weight dk.
struct KGrid {
  double kmin = 0.0, kmax = 0.0, dk = 0.0;
  std::vector<double> nodes;  // ascending

  static KGrid symmetric_band(double kmin, double kmax, double dk);
  // dk chosen as pi/(4 xmax) rounded down to fit the band
  static KGrid for_domain(double xmax, double kmin = 1e-3, double kmax = 8.0);
  // midpoint lattice matched to the DFT dual of the grid (dk = 2pi/(n dx)):
  // the plane-wave analysis/synthesis pair is then exactly unitary on the
  // nodes, so operator compositions that round-trip through the free
  // transforms collapse algebraically
  static KGrid dft_matched(const UniformGrid& x, double kmax);

  std::size_t size() const { return nodes.size(); }
  // index of the node at -nodes[j]
  std::size_t mirror(std::size_t j) const { return nodes.size() - 1 - j; }
};

struct KFunction {
  KGrid grid;
  std::vector<cplx> values;

  KFunction() = default;
  explicit KFunction(KGrid g) : grid(std::move(g)), values(grid.size()) {}
  std::size_t size() const { return values.size(); }
  cplx& operator[](std::size_t j) { return values[j]; }
  const cplx& operator[](std::size_t j) const { return values[j]; }
};

double norm_l2(const KFunction& g);

enum class WaveSource { TransferMatrix, Jost };

struct DistortedWaveTable {
  PotentialSpec spec;
  UniformGrid x;
  KGrid k;
  WaveSource source = WaveSource::TransferMatrix;
  std::vector<cplx> psi;    // row-major [k][x]: Psi_+(x_i, k_j)
  std::vector<cplx> T, R1, R2;  // per k node (conjugation symmetry applied)
  // smooth band-edge roll-off applied once on analysis and once on synthesis:
  // a hard cut at |k| = kmax would shed sin(kmax x)/x tails past the domain
  // and glitch the outermost quadrature nodes
  std::vector<double> band_taper;

  cplx psi_at(std::size_t kj, std::size_t xi) const { return psi[kj * x.n + xi]; }
  // free rows e^{i k_j x} / sqrt(2 pi) are generated on the fly by a phase
  // recurrence (no stored matrix)
  void plane_row(std::size_t kj, cplx* out) const;
};

// Pure-delta specs build from transfer-matrix piecewise plane waves; mixed
// specs (or source = Jost) go through the Volterra solutions and Psi+T.
// taper_fraction sets where the outer band-edge roll-off begins (1.0
// disables it); inner_taper_nodes > 0 also rolls the quadrature weight up
// smoothly over that many nodes off the excluded k-window, removing the
// sharp spectral gap that otherwise sheds slowly decaying spatial tails.
DistortedWaveTable build_distorted_waves(const PotentialSpec& spec, const KGrid& k,
                                         const UniformGrid& x,
                                         WaveSource source = WaveSource::TransferMatrix,
                                         double taper_fraction = 0.85,
                                         double inner_taper_nodes = 0.0);

// Pointwise Psi_+ at arbitrary (x, k) for pure-delta specs (closed form);
// table nodes otherwise.
cplx psi_plus(const DistortedWaveTable& table, double x, double k);

// analysis: g(k_j) = int conj(Psi_+(y,k_j)) f(y) dy
KFunction distorted_ft(const DistortedWaveTable& table, const GridFunction& f);
// synthesis: u(x) = int Psi_+(x,k) g(k) dk (adjoint quadrature)
GridFunction distorted_ft_adjoint(const DistortedWaveTable& table, const KFunction& g);

// ordinary (free) transforms on the same nodes and weights
KFunction fourier_analysis(const DistortedWaveTable& table, const GridFunction& f);
GridFunction fourier_synthesis(const DistortedWaveTable& table, const KFunction& g);

// register the delta-induced derivative jumps [u'](y_j) = c_j u(y_j)
void attach_delta_kinks(const PotentialSpec& spec, GridFunction& u);

struct BoundStateOnGrid {
  double kappa = 0.0;
  GridFunction state;  // L2-normalized on the grid
};

struct SpectralDecomposition {
  DistortedWaveTable table;
  std::vector<BoundStateOnGrid> bound;

  const PotentialSpec& spec() const { return table.spec; }
  const UniformGrid& x() const { return table.x; }
  const KGrid& k() const { return table.k; }
};

SpectralDecomposition build_decomposition(const PotentialSpec& spec, const KGrid& k,
                                          const UniformGrid& x,
                                          WaveSource source = WaveSource::TransferMatrix,
                                          double taper_fraction = 0.85,
                                          double inner_taper_nodes = 0.0);

struct PcResult {
  GridFunction pcf;                // transform route F_+^* F_+ f
  double route_discrepancy = 0.0;  // vs f minus bound components, relative
  bool ok = true;                  // discrepancy below the warn tolerance
};

PcResult pc_project(const SpectralDecomposition& decomp, const GridFunction& f,
                    double warn_tol = 1e-4);

}  // namespace scat1d
