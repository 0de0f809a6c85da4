// Random variables on a finite space: expectation, L^p norms, the L^2 inner
// product, and executable checkers for the Holder-Riesz, norm-monotonicity
// and Clarkson inequalities plus the uniform-convexity modulus.
#pragma once

#include <string>
#include <vector>

#include "probvar/space.hpp"

namespace probvar {

/// A real value per outcome, bound to its space. Immutable.
class RandomVariable {
 public:
  RandomVariable(ProbabilitySpace space, std::vector<double> values);

  const ProbabilitySpace& space() const { return space_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

 private:
  ProbabilitySpace space_;
  std::vector<double> values_;
};

RandomVariable operator+(const RandomVariable& x, const RandomVariable& y);
RandomVariable operator-(const RandomVariable& x, const RandomVariable& y);
RandomVariable operator*(double a, const RandomVariable& x);

/// Exponent of an L^p norm; must satisfy p >= 1.
class PNorm {
 public:
  explicit PNorm(double p);
  double value() const { return p_; }

 private:
  double p_;
};

/// One evaluated inequality: holds iff slack = rhs - lhs >= -1e-12.
struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool holds = false;
};

/// Slack below this threshold counts as a violation; rounding can produce a
/// tiny negative slack at equality cases.
inline constexpr double kSlackTolerance = 1e-12;

InequalityReport make_report(std::string name, double lhs, double rhs);

RandomVariable indicator(const Event& e);
RandomVariable zero_variable(const ProbabilitySpace& space);
RandomVariable constant_variable(const ProbabilitySpace& space, double c);

/// sum_j coeffs[j] * 1_{events[j]}, evaluated pointwise. The two-argument
/// form infers the space from the first event and so needs a nonempty list;
/// with the space given explicitly, empty lists yield the zero variable.
RandomVariable simple_combination(const std::vector<double>& coeffs,
                                  const std::vector<Event>& events);
RandomVariable simple_combination(const ProbabilitySpace& space,
                                  const std::vector<double>& coeffs,
                                  const std::vector<Event>& events);

double expectation(const RandomVariable& x);

/// E(x restricted to e): sum of x_i * w_i over members of e.
double integral_over(const RandomVariable& x, const Event& e);

/// (E(|X|^p))^(1/p). For p = 1 this is E(|X|).
double lp_norm(const RandomVariable& x, PNorm p);

/// E(X * Y); the L^2 inner product.
double inner_product(const RandomVariable& x, const RandomVariable& y);

/// q = p / (p - 1), the exponent with 1/p + 1/q = 1. Requires p > 1.
double conjugate_exponent(double p);

/// ||X Y||_1 <= ||X||_p ||Y||_q with q conjugate to p. Requires p > 1.
InequalityReport holder_check(const RandomVariable& x, const RandomVariable& y,
                              double p);

/// ||X||_r <= ||X||_s on a probability space. Requires 1 <= r < s.
InequalityReport norm_monotonicity_check(const RandomVariable& x, double r,
                                         double s);

/// Clarkson inequality; case (1) with exponent p/(p-1) for p in (1,2],
/// case (2) for p in [2,inf). At p = 2 both reduce to the parallelogram
/// identity and the slack vanishes to rounding.
InequalityReport clarkson_check(const RandomVariable& x,
                                const RandomVariable& y, double p);

/// Modulus of uniform convexity of L^p: for p >= 2
/// delta = 1 - (1 - (eps/2)^p)^(1/p); for p in (1,2) the same with the
/// conjugate exponent in place of p. Requires p > 1 and eps in (0,2].
double uniform_convexity_delta(double p, double eps);

/// |v|^p; log-domain for non-integer p, repeated multiply for small integers.
double pow_abs(double v, double p);

}  // namespace probvar
