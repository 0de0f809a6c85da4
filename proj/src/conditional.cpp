#include "probvar/conditional.hpp"

#include <cmath>
#include <string>

namespace probvar {

ConditionalExpectation make_conditional(const Partition& partition,
                                        std::vector<double> coefficients) {
  if (coefficients.size() != partition.block_count()) {
    throw LengthMismatch("got " + std::to_string(coefficients.size()) +
                         " coefficients for " +
                         std::to_string(partition.block_count()) + " blocks");
  }
  RandomVariable variable = simple_combination(coefficients, partition.blocks());
  return ConditionalExpectation{partition, std::move(coefficients),
                                std::move(variable)};
}

ConditionalExpectation cond_expectation(const RandomVariable& x,
                                        const Partition& partition) {
  require_same_space(x.space(), partition.space(), "cond_expectation");
  std::vector<double> coeffs;
  coeffs.reserve(partition.block_count());
  for (std::size_t j = 0; j < partition.block_count(); ++j) {
    coeffs.push_back(integral_over(x, partition.block(j)) /
                     partition.block_prob(j));
  }
  return make_conditional(partition, std::move(coeffs));
}

PropertyReport verify_properties(const RandomVariable& x,
                                 const Partition& partition,
                                 const ConditionalExpectation& xi) {
  require_same_space(x.space(), partition.space(), "verify_properties");
  require_same_space(xi.as_variable.space(), partition.space(),
                     "verify_properties");

  PropertyReport report;
  const SigmaAlgebra sigma = SigmaAlgebra::generate(partition);
  report.measurable = sigma.is_measurable(xi.as_variable);
  report.integrable = std::isfinite(lp_norm(xi.as_variable, PNorm(1.0)));

  // Property (iii) is checked member by member rather than on blocks plus
  // additivity, so the audit does not assume what it verifies.
  double worst = 0.0;
  if (sigma.enumerated()) {
    for (std::uint32_t mask : sigma.member_masks()) {
      const Event member = sigma.member_from_mask(mask);
      const double violation =
          std::abs(integral_over(x, member) - integral_over(xi.as_variable, member));
      if (violation > worst) worst = violation;
    }
  } else {
    report.partial = true;
    for (std::size_t j = 0; j < partition.block_count(); ++j) {
      const double violation =
          std::abs(integral_over(x, partition.block(j)) -
                   integral_over(xi.as_variable, partition.block(j)));
      if (violation > worst) worst = violation;
    }
  }
  report.property_iii_max_violation = worst;
  report.property_iii_holds = worst <= kPropertyTolerance;
  return report;
}

double total_probability(const Event& a, const Partition& partition) {
  require_same_space(a.space(), partition.space(), "total_probability");
  const ProbabilitySpace& space = partition.space();
  double sum = 0.0;
  for (std::size_t j = 0; j < partition.block_count(); ++j) {
    sum += space.cond_prob(a, partition.block(j)) * partition.block_prob(j);
  }
  return sum;
}

double tower_check(const RandomVariable& x, const Partition& partition) {
  const ConditionalExpectation xi = cond_expectation(x, partition);
  return std::abs(expectation(xi.as_variable) - expectation(x));
}

}  // namespace probvar
