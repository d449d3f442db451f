#pragma once

#include <functional>
#include <vector>

namespace scat1d {

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  bool converged = false;
  std::size_t evaluations = 0;
};

// Adaptive Gauss-Kronrod (G7,K15) on [a, b], splitting first at any interior
// breakpoints (kinks, jumps).
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, const std::vector<double>& breakpoints = {},
                              double abs_tol = 1e-10, double rel_tol = 1e-8,
                              int max_depth = 40);

// Throwing wrapper: std::runtime_error on non-convergence (divergent-integral
// signal).
double integrate_or_throw(const std::function<double(double)>& f, double a,
                          double b, const std::vector<double>& breakpoints = {},
                          double abs_tol = 1e-10, double rel_tol = 1e-8);

}  // namespace scat1d
