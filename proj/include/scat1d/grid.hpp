#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace scat1d {

using cplx = std::complex<double>;

// Uniform spatial grid x_i = x0 + i*dx.
struct UniformGrid {
  double x0 = 0.0;
  double dx = 1.0;
  std::size_t n = 0;

  double operator[](std::size_t i) const { return x0 + dx * static_cast<double>(i); }
  double front() const { return x0; }
  double back() const { return (*this)[n - 1]; }

  std::vector<double> points() const;

  // Index of the grid point nearest to x (clamped to range).
  std::size_t nearest_index(double x) const;
  // True when x coincides with a grid point to within tol*dx.
  bool has_point(double x, double tol = 1e-9) const;

  bool operator==(const UniformGrid&) const = default;

  // Symmetric grid over [-xmax, xmax]; n is odd so that x = 0 is a node.
  static UniformGrid symmetric(double xmax, double dx);
};

// Derivative-jump metadata for functions with kinks at grid nodes
// (scattering states of delta potentials).  dslope = u'(y+) - u'(y-).
struct Kink {
  std::size_t index = 0;
  cplx dslope{0.0, 0.0};
};

// Complex samples on a uniform grid.
struct GridFunction {
  UniformGrid grid;
  std::vector<cplx> values;
  std::vector<Kink> kinks;  // optional; empty for smooth functions

  GridFunction() = default;
  GridFunction(UniformGrid g, std::vector<cplx> v) : grid(g), values(std::move(v)) {}
  explicit GridFunction(UniformGrid g) : grid(g), values(g.n, cplx{0.0, 0.0}) {}

  std::size_t size() const { return values.size(); }
  cplx& operator[](std::size_t i) { return values[i]; }
  const cplx& operator[](std::size_t i) const { return values[i]; }
};

// Quadrature on the grid: dx * sum, with Euler-Maclaurin kink corrections
// (h^2/12) * [g'] applied at registered kink nodes.
cplx integrate(const GridFunction& f);

// <u, v> = dx * sum conj(u) v, kink-corrected.
cplx inner(const GridFunction& u, const GridFunction& v);

// ||u||_2, kink-corrected.
double norm_l2(const GridFunction& u);

double norm_sup(const GridFunction& u);

// (dx * sum |u|^p)^(1/p); no kink correction (used for L^p studies).
double norm_lp(const GridFunction& u, double p);

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(cplx s, const GridFunction& a);

}  // namespace scat1d
