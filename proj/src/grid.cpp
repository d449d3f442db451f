#include "scat1d/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scat1d/kernels.hpp"

namespace scat1d {

std::vector<double> UniformGrid::points() const {
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = (*this)[i];
  return p;
}

std::size_t UniformGrid::nearest_index(double x) const {
  if (n == 0) return 0;
  double r = (x - x0) / dx;
  long i = std::lround(r);
  if (i < 0) i = 0;
  if (i >= static_cast<long>(n)) i = static_cast<long>(n) - 1;
  return static_cast<std::size_t>(i);
}

bool UniformGrid::has_point(double x, double tol) const {
  if (n == 0) return false;
  std::size_t i = nearest_index(x);
  return std::abs((*this)[i] - x) <= tol * dx;
}

UniformGrid UniformGrid::symmetric(double xmax, double dx) {
  if (xmax <= 0.0 || dx <= 0.0) throw std::invalid_argument("grid: xmax, dx > 0 required");
  auto half = static_cast<std::size_t>(std::ceil(xmax / dx - 1e-12));
  return UniformGrid{-static_cast<double>(half) * dx, dx, 2 * half + 1};
}

namespace {

void check_same_grid(const GridFunction& a, const GridFunction& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("grid mismatch");
}

}  // namespace

cplx integrate(const GridFunction& f) {
  cplx s{0.0, 0.0};
  for (const cplx& v : f.values) s += v;
  s *= f.grid.dx;
  const double c = f.grid.dx * f.grid.dx / 12.0;
  for (const Kink& k : f.kinks) s += c * k.dslope;
  return s;
}

cplx inner(const GridFunction& u, const GridFunction& v) {
  check_same_grid(u, v);
  cplx s = kern::dot_conj(u.values.data(), v.values.data(), u.size());
  s *= u.grid.dx;
  // [d(conj(u) v)/dx] = conj([u']) v + conj(u) [v']
  const double c = u.grid.dx * u.grid.dx / 12.0;
  for (const Kink& k : u.kinks) s += c * std::conj(k.dslope) * v[k.index];
  for (const Kink& k : v.kinks) s += c * std::conj(u[k.index]) * k.dslope;
  return s;
}

double norm_l2(const GridFunction& u) {
  double s = u.grid.dx * kern::norm_sq(u.values.data(), u.size());
  const double c = u.grid.dx * u.grid.dx / 12.0;
  for (const Kink& k : u.kinks)
    s += c * 2.0 * std::real(std::conj(u[k.index]) * k.dslope);
  return std::sqrt(std::max(0.0, s));
}

double norm_sup(const GridFunction& u) {
  double m = 0.0;
  for (const cplx& v : u.values) m = std::max(m, std::abs(v));
  return m;
}

double norm_lp(const GridFunction& u, double p) {
  if (p <= 0.0) throw std::invalid_argument("norm_lp: p > 0 required");
  double s = 0.0;
  for (const cplx& v : u.values) s += std::pow(std::abs(v), p);
  return std::pow(u.grid.dx * s, 1.0 / p);
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  check_same_grid(a, b);
  GridFunction r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  r.kinks.clear();
  return r;
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  check_same_grid(a, b);
  GridFunction r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  r.kinks.clear();
  return r;
}

GridFunction operator*(cplx s, const GridFunction& a) {
  GridFunction r = a;
  for (auto& v : r.values) v *= s;
  for (auto& k : r.kinks) k.dslope *= s;
  return r;
}

}  // namespace scat1d
