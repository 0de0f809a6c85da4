// Seeded property suites behind the `check` subcommand, plus the random
// generators they draw from. Every trial is seeded from (base seed, trial
// index) alone, so runs are reproducible and trials could be sharded.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "probvar/lp.hpp"
#include "probvar/sigma.hpp"

namespace probvar {

/// splitmix64 stream; self-contained so identical seeds give identical
/// draws on every platform, which std::uniform_real_distribution does not
/// guarantee.
class TrialRng {
 public:
  explicit TrialRng(std::uint64_t seed) : state_(seed) {}
  /// Stream for one trial of a suite, decorrelated from neighboring trials.
  static TrialRng for_trial(std::uint64_t base_seed, std::uint64_t trial);

  std::uint64_t next_u64();
  double uniform01();  // [0, 1)
  double uniform(double lo, double hi);
  std::size_t index(std::size_t bound);  // [0, bound)
  bool chance(double probability);

 private:
  std::uint64_t state_;
};

/// Space with 1..max_outcomes outcomes and weights bounded away from zero.
ProbabilitySpace random_space(TrialRng& rng, std::size_t max_outcomes = 64);

/// Values uniform in [-2, 2]; bounded so fourth powers stay well scaled.
RandomVariable random_variable(TrialRng& rng, const ProbabilitySpace& space);

struct RandomInstance {
  ProbabilitySpace space;
  Partition partition;
  Event event;
  RandomVariable target;
};

/// Space of at most 3*max_blocks+1 outcomes split into 1..max_blocks
/// blocks. Block masses stay within a factor 4*max_blocks of each other so
/// gradient descent at tol 1e-10 pins coefficients to ~1e-8. Occasionally
/// plants a zero-weight outcome inside a block to exercise null-set
/// handling. When indicator_target is false the target is a general
/// variable instead of 1_A.
RandomInstance random_instance(TrialRng& rng, std::size_t max_blocks,
                               bool indicator_target);

enum class Suite { holder, clarkson, monotonicity, sigma, dirichlet };

std::optional<Suite> suite_from_name(const std::string& name);
std::string suite_name(Suite suite);

struct SuiteFailure {
  std::size_t trial = 0;
  std::string message;
};

/// Aggregate over all trials. worst_slack is the smallest margin seen,
/// where each suite's margin is >= -1e-12 exactly when the trial passes:
/// the inequality suites use slack = rhs - lhs (at p = 2 Clarkson uses
/// -|slack|, the identity case), dirichlet uses tolerance minus observed
/// deviation, and the sigma suite reports 0 or -1 per structural check.
struct SuiteResult {
  Suite suite = Suite::holder;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double worst_slack = 0.0;
  std::optional<SuiteFailure> first_failure;
};

/// Exponents cycled through when no --p override is given.
inline constexpr double kExponentGrid[] = {1.25, 1.5, 2.0, 3.0, 4.0};

SuiteResult run_suite(Suite suite, std::size_t trials, std::uint64_t seed,
                      std::optional<double> p_override = std::nullopt);

}  // namespace probvar
