#pragma once

// Potential model V = V_sing + V_reg: a finite list of Dirac deltas plus a
// regular part with weighted-L1 metadata.  The delta at y with strength c
// imposes the jump condition u'(y+) - u'(y-) = c u(y) on solutions of
// -u'' + V u = k^2 u.

#include <functional>
#include <string>
#include <vector>

namespace scat1d {

struct DeltaTerm {
  double strength = 0.0;  // c_j, dimension 1/length
  double location = 0.0;  // y_j
};

class RegularPart {
 public:
  enum class Kind { Zero, Box, Gaussian, Exponential, Table };

  static RegularPart zero();
  // height on [lo, hi]; evaluates to height/2 at the edges
  static RegularPart box(double height, double lo, double hi);
  static RegularPart gaussian(double amplitude, double center, double width);
  // amplitude * exp(-rate * |x|)
  static RegularPart exponential(double amplitude, double rate);
  // sampled table on an increasing abscissa, linear interpolation,
  // compact support [x.front(), x.back()]
  static RegularPart table(std::vector<double> x, std::vector<double> v);

  double operator()(double x) const;
  bool is_zero() const { return kind_ == Kind::Zero; }
  Kind kind() const { return kind_; }

  // radius of the declared support; +inf for unbounded kinds
  double support_radius() const;
  // radius beyond which the decay envelope is below `tiny` (finite always)
  double envelope_radius(double tiny = 1e-16) const;
  // interior points where V or V' jumps (quadrature breakpoints)
  std::vector<double> breakpoints() const;

  const std::vector<double>& params() const { return p_; }
  std::string kind_name() const;

 private:
  Kind kind_ = Kind::Zero;
  std::vector<double> p_;          // kind-specific parameters
  std::vector<double> tx_, tv_;    // table data
};

struct PotentialSpec {
  std::vector<DeltaTerm> deltas;
  RegularPart regular = RegularPart::zero();
  double gamma = 1.6;  // weight exponent for the L^1_gamma norm

  bool is_free() const { return deltas.empty() && regular.is_zero(); }
  bool pure_delta() const { return regular.is_zero(); }
  // a = max(|y_j|, regular support radius); 0 for the free Hamiltonian
  double support_radius() const;
  double delta_abs_sum() const;
};

// integral (1+|s|)^gamma |V_reg(s)| ds  (deltas excluded)
double weighted_l1_norm(const PotentialSpec& spec, double gamma);
inline double weighted_l1_norm(const PotentialSpec& spec) {
  return weighted_l1_norm(spec, spec.gamma);
}

// gamma_1(x) = integral_x^inf (t-x)|V(t)| dt, deltas included
double gamma1(const PotentialSpec& spec, double x);

// integral_s^inf |V(t)| dt, deltas included (half weight at t = s exactly)
double abs_tail(const PotentialSpec& spec, double s);
// integral_s^inf V(t) dt, signed, deltas included (half weight at equality)
double signed_tail(const PotentialSpec& spec, double s);
// same with strict inequality for the delta terms (open representative,
// used inside quadratures where boundary sets have measure zero)
double signed_tail_strict(const PotentialSpec& spec, double s);
// same with the regular part only
double reg_abs_tail(const PotentialSpec& spec, double s);
// integral_x^inf |V_reg(t)| (1+|t|) dt and the mirrored left tail
double reg_weighted_tail_right(const PotentialSpec& spec, double x);
double reg_weighted_tail_left(const PotentialSpec& spec, double x);

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
  double weighted_norm = 0.0;
  std::size_t delta_count = 0;
  double support_radius = 0.0;
};

ValidationReport validate(const PotentialSpec& spec);

}  // namespace scat1d
