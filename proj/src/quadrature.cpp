#include "scat1d/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scat1d {
namespace {

// Kronrod-15 nodes on [-1,1] and weights; Gauss-7 weights on the odd nodes.
constexpr double xk[15] = {
    -0.9914553711208126, -0.9491079123427585, -0.8648644233597691,
    -0.7415311855993945, -0.5860872354676911, -0.4058451513773972,
    -0.2077849550078985, 0.0,                 0.2077849550078985,
    0.4058451513773972,  0.5860872354676911,  0.7415311855993945,
    0.8648644233597691,  0.9491079123427585,  0.9914553711208126};

constexpr double wk[15] = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278, 0.2044329400752989,
    0.1903505780647854, 0.1690047266392679, 0.1406532597155259,
    0.1047900103222502, 0.0630920926299786, 0.0229353220105292};

constexpr double wg[7] = {0.1294849661688697, 0.2797053914892767,
                          0.3818300505051189, 0.4179591836734694,
                          0.3818300505051189, 0.2797053914892767,
                          0.1294849661688697};

struct PanelEstimate {
  double value;
  double error;
};

PanelEstimate gk15(const std::function<double(double)>& f, double a, double b,
                   std::size_t& evals) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double sk = 0.0, sg = 0.0;
  for (int i = 0; i < 15; ++i) {
    const double v = f(c + h * xk[i]);
    sk += wk[i] * v;
    if (i % 2 == 1) sg += wg[i / 2] * v;
  }
  evals += 15;
  const double value = sk * h;
  const double diff = std::abs((sk - sg) * h);
  // standard QUADPACK-style sharpened error estimate
  const double err = diff > 0.0 ? std::min(diff, std::pow(200.0 * diff, 1.5)) : 0.0;
  return {value, std::max(err, diff * 1e-6)};
}

void adapt(const std::function<double(double)>& f, double a, double b,
           double tol, int depth, int max_depth, QuadResult& out) {
  PanelEstimate e = gk15(f, a, b, out.evaluations);
  if (e.error <= tol || depth >= max_depth) {
    out.value += e.value;
    out.abs_error += e.error;
    if (e.error > tol && depth >= max_depth) out.converged = false;
    return;
  }
  const double m = 0.5 * (a + b);
  adapt(f, a, m, 0.5 * tol, depth + 1, max_depth, out);
  adapt(f, m, b, 0.5 * tol, depth + 1, max_depth, out);
}

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, const std::vector<double>& breakpoints,
                              double abs_tol, double rel_tol, int max_depth) {
  QuadResult out;
  out.converged = true;
  if (!(a < b)) {
    if (a == b) return out;
    throw std::invalid_argument("integrate_adaptive: require a <= b");
  }

  std::vector<double> edges{a};
  for (double x : breakpoints)
    if (x > a && x < b) edges.push_back(x);
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());

  // first pass to scale the relative tolerance
  double rough = 0.0;
  QuadResult scratch;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    rough += std::abs(gk15(f, edges[i], edges[i + 1], scratch.evaluations).value);
  out.evaluations = scratch.evaluations;

  const double tol = std::max(abs_tol, rel_tol * rough);
  const double n_panels = static_cast<double>(edges.size() - 1);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    adapt(f, edges[i], edges[i + 1], tol / n_panels, 0, max_depth, out);
  if (!(out.abs_error <= 50.0 * tol)) out.converged = false;
  return out;
}

double integrate_or_throw(const std::function<double(double)>& f, double a,
                          double b, const std::vector<double>& breakpoints,
                          double abs_tol, double rel_tol) {
  QuadResult r = integrate_adaptive(f, a, b, breakpoints, abs_tol, rel_tol);
  if (!r.converged)
    throw std::runtime_error("quadrature failed to converge (divergent integral?)");
  return r.value;
}

}  // namespace scat1d
