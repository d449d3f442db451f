#include "scat1d/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "scat1d/quadrature.hpp"

namespace scat1d {

RegularPart RegularPart::zero() { return RegularPart{}; }

RegularPart RegularPart::box(double height, double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("box: lo < hi required");
  RegularPart r;
  r.kind_ = Kind::Box;
  r.p_ = {height, lo, hi};
  return r;
}

RegularPart RegularPart::gaussian(double amplitude, double center, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian: width > 0 required");
  RegularPart r;
  r.kind_ = Kind::Gaussian;
  r.p_ = {amplitude, center, width};
  return r;
}

RegularPart RegularPart::exponential(double amplitude, double rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("exponential: rate > 0 required");
  RegularPart r;
  r.kind_ = Kind::Exponential;
  r.p_ = {amplitude, rate};
  return r;
}

RegularPart RegularPart::table(std::vector<double> x, std::vector<double> v) {
  if (x.size() != v.size() || x.size() < 2)
    throw std::invalid_argument("table: need matching arrays, size >= 2");
  if (!std::is_sorted(x.begin(), x.end()))
    throw std::invalid_argument("table: abscissa must be increasing");
  RegularPart r;
  r.kind_ = Kind::Table;
  r.tx_ = std::move(x);
  r.tv_ = std::move(v);
  return r;
}

double RegularPart::operator()(double x) const {
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Box: {
      const double h = p_[0], lo = p_[1], hi = p_[2];
      if (x < lo || x > hi) return 0.0;
      if (x == lo || x == hi) return 0.5 * h;  // jump midpoint convention
      return h;
    }
    case Kind::Gaussian: {
      const double d = (x - p_[1]) / p_[2];
      return p_[0] * std::exp(-d * d);
    }
    case Kind::Exponential:
      return p_[0] * std::exp(-p_[1] * std::abs(x));
    case Kind::Table: {
      if (x <= tx_.front() || x >= tx_.back()) {
        if (x == tx_.front()) return tv_.front();
        if (x == tx_.back()) return tv_.back();
        return 0.0;
      }
      auto it = std::upper_bound(tx_.begin(), tx_.end(), x);
      std::size_t i = static_cast<std::size_t>(it - tx_.begin()) - 1;
      const double t = (x - tx_[i]) / (tx_[i + 1] - tx_[i]);
      return tv_[i] + t * (tv_[i + 1] - tv_[i]);
    }
  }
  return 0.0;
}

double RegularPart::support_radius() const {
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Box:
      return std::max(std::abs(p_[1]), std::abs(p_[2]));
    case Kind::Table:
      return std::max(std::abs(tx_.front()), std::abs(tx_.back()));
    default:
      return std::numeric_limits<double>::infinity();
  }
}

double RegularPart::envelope_radius(double tiny) const {
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Box:
    case Kind::Table:
      return support_radius();
    case Kind::Gaussian: {
      const double a = std::abs(p_[0]);
      if (a <= tiny) return std::abs(p_[1]);
      return std::abs(p_[1]) + p_[2] * std::sqrt(std::log(a / tiny));
    }
    case Kind::Exponential: {
      const double a = std::abs(p_[0]);
      if (a <= tiny) return 0.0;
      return std::log(a / tiny) / p_[1];
    }
  }
  return 0.0;
}

std::vector<double> RegularPart::breakpoints() const {
  switch (kind_) {
    case Kind::Box:
      return {p_[1], p_[2]};
    case Kind::Exponential:
      return {0.0};
    case Kind::Table:
      return tx_;
    default:
      return {};
  }
}

std::string RegularPart::kind_name() const {
  switch (kind_) {
    case Kind::Zero: return "zero";
    case Kind::Box: return "box";
    case Kind::Gaussian: return "gaussian";
    case Kind::Exponential: return "exponential";
    case Kind::Table: return "table";
  }
  return "?";
}

double PotentialSpec::support_radius() const {
  double a = regular.support_radius();
  if (!std::isfinite(a)) a = regular.envelope_radius();
  for (const DeltaTerm& d : deltas) a = std::max(a, std::abs(d.location));
  return a;
}

double PotentialSpec::delta_abs_sum() const {
  double s = 0.0;
  for (const DeltaTerm& d : deltas) s += std::abs(d.strength);
  return s;
}

double weighted_l1_norm(const PotentialSpec& spec, double gamma) {
  if (gamma < 0.0) throw std::invalid_argument("weighted_l1_norm: gamma >= 0");
  if (spec.regular.is_zero()) return 0.0;
  const double R = spec.regular.envelope_radius();
  auto f = [&](double s) {
    return std::pow(1.0 + std::abs(s), gamma) * std::abs(spec.regular(s));
  };
  auto bp = spec.regular.breakpoints();
  bp.push_back(0.0);
  return integrate_or_throw(f, -R, R, bp);
}

double gamma1(const PotentialSpec& spec, double x) {
  double s = 0.0;
  for (const DeltaTerm& d : spec.deltas)
    if (d.location > x) s += std::abs(d.strength) * (d.location - x);
  if (!spec.regular.is_zero()) {
    const double R = std::max(spec.regular.envelope_radius(), x);
    if (R > x) {
      auto f = [&](double t) { return (t - x) * std::abs(spec.regular(t)); };
      s += integrate_or_throw(f, x, R, spec.regular.breakpoints());
    }
  }
  return s;
}

double reg_abs_tail(const PotentialSpec& spec, double s) {
  if (spec.regular.is_zero()) return 0.0;
  const double R = std::max(spec.regular.envelope_radius(), s);
  if (R <= s) return 0.0;
  auto f = [&](double t) { return std::abs(spec.regular(t)); };
  return integrate_or_throw(f, s, R, spec.regular.breakpoints());
}

namespace {
// grid-sampled arguments land on jump lines only up to roundoff
constexpr double kLineTol = 1e-12;
}  // namespace

double abs_tail(const PotentialSpec& spec, double s) {
  double v = reg_abs_tail(spec, s);
  for (const DeltaTerm& d : spec.deltas) {
    if (std::abs(d.location - s) <= kLineTol)
      v += 0.5 * std::abs(d.strength);
    else if (d.location > s)
      v += std::abs(d.strength);
  }
  return v;
}

namespace {

double reg_signed_tail(const PotentialSpec& spec, double s) {
  if (spec.regular.is_zero()) return 0.0;
  const double R = std::max(spec.regular.envelope_radius(), s);
  if (R <= s) return 0.0;
  auto f = [&](double t) { return spec.regular(t); };
  return integrate_or_throw(f, s, R, spec.regular.breakpoints());
}

}  // namespace

double signed_tail(const PotentialSpec& spec, double s) {
  double v = reg_signed_tail(spec, s);
  for (const DeltaTerm& d : spec.deltas) {
    if (std::abs(d.location - s) <= kLineTol)
      v += 0.5 * d.strength;
    else if (d.location > s)
      v += d.strength;
  }
  return v;
}

double signed_tail_strict(const PotentialSpec& spec, double s) {
  double v = reg_signed_tail(spec, s);
  for (const DeltaTerm& d : spec.deltas)
    if (d.location > s + kLineTol) v += d.strength;
  return v;
}

double reg_weighted_tail_right(const PotentialSpec& spec, double x) {
  if (spec.regular.is_zero()) return 0.0;
  const double R = std::max(spec.regular.envelope_radius(), x);
  if (R <= x) return 0.0;
  auto f = [&](double t) { return std::abs(spec.regular(t)) * (1.0 + std::abs(t)); };
  return integrate_or_throw(f, x, R, spec.regular.breakpoints());
}

double reg_weighted_tail_left(const PotentialSpec& spec, double x) {
  if (spec.regular.is_zero()) return 0.0;
  const double R = spec.regular.envelope_radius();
  if (-R >= x) return 0.0;
  auto f = [&](double t) { return std::abs(spec.regular(t)) * (1.0 + std::abs(t)); };
  return integrate_or_throw(f, -R, x, spec.regular.breakpoints());
}

ValidationReport validate(const PotentialSpec& spec) {
  ValidationReport r;
  r.delta_count = spec.deltas.size();
  for (std::size_t j = 0; j < spec.deltas.size(); ++j) {
    if (spec.deltas[j].strength == 0.0)
      r.violations.push_back("delta " + std::to_string(j) + ": zero strength");
    if (j > 0 && !(spec.deltas[j - 1].location < spec.deltas[j].location))
      r.violations.push_back("delta " + std::to_string(j) +
                             ": locations not strictly increasing");
  }
  try {
    r.weighted_norm = weighted_l1_norm(spec, spec.gamma);
    if (!std::isfinite(r.weighted_norm))
      r.violations.push_back("weighted norm not finite");
  } catch (const std::exception& e) {
    r.violations.push_back(std::string("weighted norm: ") + e.what());
  }
  r.support_radius = spec.support_radius();
  r.ok = r.violations.empty();
  return r;
}

}  // namespace scat1d
