#include "probvar/lp.hpp"

#include <cmath>
#include <sstream>

namespace probvar {

RandomVariable::RandomVariable(ProbabilitySpace space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != space_.size()) {
    throw LengthMismatch("got " + std::to_string(values_.size()) +
                         " values for a space of " +
                         std::to_string(space_.size()) + " outcomes");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw NonFiniteValue("value " + std::to_string(i) + " is not finite");
    }
  }
}

RandomVariable operator+(const RandomVariable& x, const RandomVariable& y) {
  require_same_space(x.space(), y.space(), "operator+");
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = x[i] + y[i];
  return RandomVariable(x.space(), std::move(v));
}

RandomVariable operator-(const RandomVariable& x, const RandomVariable& y) {
  require_same_space(x.space(), y.space(), "operator-");
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = x[i] - y[i];
  return RandomVariable(x.space(), std::move(v));
}

RandomVariable operator*(double a, const RandomVariable& x) {
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a * x[i];
  return RandomVariable(x.space(), std::move(v));
}

PNorm::PNorm(double p) : p_(p) {
  if (!(p >= 1.0)) {
    std::ostringstream msg;
    msg << "p = " << p << "; an L^p exponent needs p >= 1";
    throw BadExponent(msg.str());
  }
}

InequalityReport make_report(std::string name, double lhs, double rhs) {
  InequalityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.holds = r.slack >= -kSlackTolerance;
  return r;
}

RandomVariable indicator(const Event& e) {
  std::vector<double> v(e.space_size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (e.contains(i)) v[i] = 1.0;
  }
  return RandomVariable(e.space(), std::move(v));
}

RandomVariable zero_variable(const ProbabilitySpace& space) {
  return RandomVariable(space, std::vector<double>(space.size(), 0.0));
}

RandomVariable constant_variable(const ProbabilitySpace& space, double c) {
  return RandomVariable(space, std::vector<double>(space.size(), c));
}

RandomVariable simple_combination(const std::vector<double>& coeffs,
                                  const std::vector<Event>& events) {
  if (events.empty()) {
    throw Empty("simple_combination needs at least one event to infer the space");
  }
  return simple_combination(events.front().space(), coeffs, events);
}

RandomVariable simple_combination(const ProbabilitySpace& space,
                                  const std::vector<double>& coeffs,
                                  const std::vector<Event>& events) {
  if (coeffs.size() != events.size()) {
    throw LengthMismatch("got " + std::to_string(coeffs.size()) +
                         " coefficients for " + std::to_string(events.size()) +
                         " events");
  }
  std::vector<double> v(space.size(), 0.0);
  for (std::size_t j = 0; j < events.size(); ++j) {
    require_same_space(space, events[j].space(), "simple_combination");
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (events[j].contains(i)) v[i] += coeffs[j];
    }
  }
  return RandomVariable(space, std::move(v));
}

double expectation(const RandomVariable& x) {
  const auto& w = x.space().weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) sum += x[i] * w[i];
  return sum;
}

double integral_over(const RandomVariable& x, const Event& e) {
  require_same_space(x.space(), e.space(), "integral_over");
  const auto& w = x.space().weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (e.contains(i)) sum += x[i] * w[i];
  }
  return sum;
}

double pow_abs(double v, double p) {
  const double a = std::abs(v);
  if (a == 0.0) return 0.0;
  const double rounded = std::nearbyint(p);
  if (p == rounded && p >= 1.0 && p <= 16.0) {
    double out = 1.0;
    for (int k = 0; k < static_cast<int>(rounded); ++k) out *= a;
    return out;
  }
  return std::exp(p * std::log(a));
}

double lp_norm(const RandomVariable& x, PNorm p) {
  const double pv = p.value();
  const auto& w = x.space().weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) sum += pow_abs(x[i], pv) * w[i];
  if (pv == 1.0) return sum;
  if (pv == 2.0) return std::sqrt(sum);
  return std::pow(sum, 1.0 / pv);
}

double inner_product(const RandomVariable& x, const RandomVariable& y) {
  require_same_space(x.space(), y.space(), "inner_product");
  const auto& w = x.space().weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) sum += x[i] * y[i] * w[i];
  return sum;
}

double conjugate_exponent(double p) {
  if (!(p > 1.0)) {
    std::ostringstream msg;
    msg << "p = " << p << "; a conjugate exponent needs p > 1";
    throw BadExponent(msg.str());
  }
  return p / (p - 1.0);
}

InequalityReport holder_check(const RandomVariable& x, const RandomVariable& y,
                              double p) {
  require_same_space(x.space(), y.space(), "holder_check");
  const double q = conjugate_exponent(p);
  const auto& w = x.space().weights();
  double lhs = 0.0;  // ||X Y||_1
  for (std::size_t i = 0; i < w.size(); ++i) lhs += std::abs(x[i] * y[i]) * w[i];
  const double rhs = lp_norm(x, PNorm(p)) * lp_norm(y, PNorm(q));
  return make_report("holder", lhs, rhs);
}

InequalityReport norm_monotonicity_check(const RandomVariable& x, double r,
                                         double s) {
  if (!(r >= 1.0) || !(s > r)) {
    std::ostringstream msg;
    msg << "r = " << r << ", s = " << s << "; norm monotonicity needs 1 <= r < s";
    throw BadExponent(msg.str());
  }
  const double lhs = lp_norm(x, PNorm(r));
  const double rhs = lp_norm(x, PNorm(s));
  return make_report("norm_monotonicity", lhs, rhs);
}

InequalityReport clarkson_check(const RandomVariable& x,
                                const RandomVariable& y, double p) {
  require_same_space(x.space(), y.space(), "clarkson_check");
  if (!(p > 1.0)) {
    std::ostringstream msg;
    msg << "p = " << p << "; the Clarkson inequalities need p > 1";
    throw BadExponent(msg.str());
  }
  const RandomVariable half_sum = 0.5 * (x + y);
  const RandomVariable half_diff = 0.5 * (x - y);
  const double np_x = lp_norm(x, PNorm(p));
  const double np_y = lp_norm(y, PNorm(p));
  const double np_sum = lp_norm(half_sum, PNorm(p));
  const double np_diff = lp_norm(half_diff, PNorm(p));
  if (p <= 2.0) {
    // case (1): exponent p/(p-1) on the left, 1/(p-1) on the right
    const double q = p / (p - 1.0);
    const double lhs = pow_abs(np_sum, q) + pow_abs(np_diff, q);
    const double mean_pth = 0.5 * pow_abs(np_x, p) + 0.5 * pow_abs(np_y, p);
    const double rhs = pow_abs(mean_pth, 1.0 / (p - 1.0));
    return make_report("clarkson_case1", lhs, rhs);
  }
  const double lhs = pow_abs(np_sum, p) + pow_abs(np_diff, p);
  const double rhs = 0.5 * (pow_abs(np_x, p) + pow_abs(np_y, p));
  return make_report("clarkson_case2", lhs, rhs);
}

double uniform_convexity_delta(double p, double eps) {
  if (!(p > 1.0)) {
    std::ostringstream msg;
    msg << "p = " << p << "; the convexity modulus needs p > 1";
    throw BadExponent(msg.str());
  }
  if (!(eps > 0.0) || !(eps <= 2.0)) {
    std::ostringstream msg;
    msg << "eps = " << eps << "; the convexity modulus needs eps in (0,2]";
    throw BadEpsilon(msg.str());
  }
  const double e = p >= 2.0 ? p : conjugate_exponent(p);
  return 1.0 - std::pow(1.0 - std::pow(eps / 2.0, e), 1.0 / e);
}

}  // namespace probvar
