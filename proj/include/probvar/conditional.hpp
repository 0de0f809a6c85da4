// Closed-form conditional expectation over a partition sigma-algebra: the
// coefficient on block j is E(x 1_Bj) / P(Bj), so for an indicator target
// the coefficients are the conditional probabilities P(A|Bj). Includes the
// defining-property audit and the law of total probability.
#pragma once

#include <cstddef>
#include <vector>

#include "probvar/lp.hpp"
#include "probvar/sigma.hpp"

namespace probvar {

/// A per-block-constant variable together with its coefficients.
struct ConditionalExpectation {
  Partition partition;
  std::vector<double> coefficients;
  RandomVariable as_variable;
};

/// Builds the variable sum_j coefficients[j] 1_Bj for arbitrary coefficients
/// (tests perturb these to exercise verification failures).
ConditionalExpectation make_conditional(const Partition& partition,
                                        std::vector<double> coefficients);

/// The conditional expectation of x given the partition's sigma-algebra.
ConditionalExpectation cond_expectation(const RandomVariable& x,
                                        const Partition& partition);

/// Outcome of checking the three defining properties of a conditional
/// expectation candidate xi against x: measurability, integrability, and
/// matching integrals over every member of the generated sigma-algebra.
/// With more than 20 blocks only the blocks themselves are checked and the
/// verification is flagged partial.
struct PropertyReport {
  bool measurable = false;
  bool integrable = false;
  bool property_iii_holds = false;
  double property_iii_max_violation = 0.0;
  bool partial = false;

  bool all_pass() const {
    return measurable && integrable && property_iii_holds;
  }
};

inline constexpr double kPropertyTolerance = 1e-12;

PropertyReport verify_properties(const RandomVariable& x,
                                 const Partition& partition,
                                 const ConditionalExpectation& xi);

/// sum_j P(a|Bj) P(Bj); equal to P(a) by the law of total probability.
double total_probability(const Event& a, const Partition& partition);

/// |E(E(x|G)) - E(x)|; at most rounding noise.
double tower_check(const RandomVariable& x, const Partition& partition);

}  // namespace probvar
