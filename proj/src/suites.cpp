#include "probvar/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace probvar {

TrialRng TrialRng::for_trial(std::uint64_t base_seed, std::uint64_t trial) {
  TrialRng rng(base_seed + 0x9E3779B97F4A7C15ull * (trial + 1));
  rng.next_u64();  // flush correlated low bits of sequential seeds
  return rng;
}

std::uint64_t TrialRng::next_u64() {
  state_ += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double TrialRng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double TrialRng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

std::size_t TrialRng::index(std::size_t bound) {
  return bound <= 1 ? 0 : static_cast<std::size_t>(next_u64() % bound);
}

bool TrialRng::chance(double probability) {
  return uniform01() < probability;
}

ProbabilitySpace random_space(TrialRng& rng, std::size_t max_outcomes) {
  const std::size_t n = 1 + rng.index(max_outcomes);
  std::vector<double> weights(n);
  double sum = 0.0;
  for (double& w : weights) {
    w = rng.uniform(0.2, 1.0);
    sum += w;
  }
  for (double& w : weights) w /= sum;
  return ProbabilitySpace::make(std::move(weights));
}

RandomVariable random_variable(TrialRng& rng, const ProbabilitySpace& space) {
  std::vector<double> values(space.size());
  for (double& v : values) v = rng.uniform(-2.0, 2.0);
  return RandomVariable(space, std::move(values));
}

RandomInstance random_instance(TrialRng& rng, std::size_t max_blocks,
                               bool indicator_target) {
  const std::size_t n_blocks = 1 + rng.index(max_blocks);

  // Draw per-block outcome counts and masses first, then split each block
  // mass across its outcomes. Masses in [1,4] and at most 3 outcomes per
  // block keep every normalized block probability >= 1/(4*max_blocks).
  std::vector<std::size_t> outcomes_per_block(n_blocks);
  std::vector<double> block_mass(n_blocks);
  std::size_t n = 0;
  for (std::size_t j = 0; j < n_blocks; ++j) {
    outcomes_per_block[j] = 1 + rng.index(3);
    block_mass[j] = rng.uniform(1.0, 4.0);
    n += outcomes_per_block[j];
  }
  const std::size_t zero_block = rng.chance(0.15) ? rng.index(n_blocks) : n_blocks;
  if (zero_block < n_blocks) {
    outcomes_per_block[zero_block] += 1;
    ++n;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(order[i - 1], order[rng.index(i)]);
  }

  const double total_mass = std::accumulate(block_mass.begin(), block_mass.end(), 0.0);
  std::vector<double> weights(n, 0.0);
  std::vector<std::vector<std::size_t>> block_indices(n_blocks);
  std::size_t cursor = 0;
  for (std::size_t j = 0; j < n_blocks; ++j) {
    const std::size_t count = outcomes_per_block[j];
    const bool has_zero = j == zero_block;
    std::vector<double> shares(count);
    double share_sum = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
      const bool zero_outcome = has_zero && k == count - 1;
      shares[k] = zero_outcome ? 0.0 : rng.uniform(0.25, 1.0);
      share_sum += shares[k];
    }
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t outcome = order[cursor++];
      weights[outcome] = block_mass[j] * (shares[k] / share_sum) / total_mass;
      block_indices[j].push_back(outcome);
    }
  }

  ProbabilitySpace space = ProbabilitySpace::make(std::move(weights));
  std::vector<Event> blocks;
  blocks.reserve(n_blocks);
  for (const auto& indices : block_indices) {
    blocks.push_back(space.make_event(indices));
  }
  Partition partition = Partition::make(space, std::move(blocks));

  std::vector<std::size_t> event_members;
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.chance(0.5)) event_members.push_back(i);
  }
  Event event = space.make_event(event_members);
  RandomVariable target =
      indicator_target ? indicator(event) : random_variable(rng, space);
  return RandomInstance{std::move(space), std::move(partition), std::move(event),
                        std::move(target)};
}

std::optional<Suite> suite_from_name(const std::string& name) {
  if (name == "holder") return Suite::holder;
  if (name == "clarkson") return Suite::clarkson;
  if (name == "monotonicity") return Suite::monotonicity;
  if (name == "sigma") return Suite::sigma;
  if (name == "dirichlet") return Suite::dirichlet;
  return std::nullopt;
}

std::string suite_name(Suite suite) {
  switch (suite) {
    case Suite::holder: return "holder";
    case Suite::clarkson: return "clarkson";
    case Suite::monotonicity: return "monotonicity";
    case Suite::sigma: return "sigma";
    case Suite::dirichlet: return "dirichlet";
  }
  return "unknown";
}

namespace {

struct TrialOutcome {
  double margin = 0.0;
  bool failed = false;
  std::string message;
};

std::string format_margin(const char* label, double value) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%s = %.17g", label, value);
  return buf;
}

double trial_exponent(TrialRng& rng, std::size_t trial,
                      const std::optional<double>& p_override) {
  (void)rng;
  if (p_override) return *p_override;
  return kExponentGrid[trial % (sizeof(kExponentGrid) / sizeof(double))];
}

TrialOutcome holder_trial(TrialRng& rng, std::size_t trial,
                          const std::optional<double>& p_override) {
  const ProbabilitySpace space = random_space(rng);
  const RandomVariable x = random_variable(rng, space);
  const RandomVariable y = random_variable(rng, space);
  const InequalityReport report =
      holder_check(x, y, trial_exponent(rng, trial, p_override));
  TrialOutcome out;
  out.margin = report.slack;
  out.failed = !report.holds;
  if (out.failed) out.message = format_margin("holder slack", report.slack);
  return out;
}

TrialOutcome clarkson_trial(TrialRng& rng, std::size_t trial,
                            const std::optional<double>& p_override) {
  const ProbabilitySpace space = random_space(rng);
  const RandomVariable x = random_variable(rng, space);
  const RandomVariable y = random_variable(rng, space);
  const double p = trial_exponent(rng, trial, p_override);
  const InequalityReport report = clarkson_check(x, y, p);
  TrialOutcome out;
  if (p == 2.0) {
    // parallelogram identity: the slack must vanish, not merely be nonnegative
    out.margin = -std::abs(report.slack);
  } else {
    out.margin = report.slack;
  }
  out.failed = out.margin < -kSlackTolerance;
  if (out.failed) out.message = format_margin("clarkson slack", report.slack);
  return out;
}

TrialOutcome monotonicity_trial(TrialRng& rng) {
  const ProbabilitySpace space = random_space(rng);
  const RandomVariable x = random_variable(rng, space);
  const double r = rng.uniform(1.0, 3.0);
  const double s = r + rng.uniform(0.25, 1.5);
  const InequalityReport report = norm_monotonicity_check(x, r, s);
  TrialOutcome out;
  out.margin = report.slack;
  out.failed = !report.holds;
  if (out.failed) out.message = format_margin("monotonicity slack", report.slack);
  return out;
}

TrialOutcome sigma_trial(TrialRng& rng) {
  const RandomInstance instance = random_instance(rng, 8, true);
  const SigmaAlgebra sigma = SigmaAlgebra::generate(instance.partition);
  const std::size_t n_blocks = sigma.block_count();
  TrialOutcome out;
  auto fail = [&](std::string message) {
    out.failed = true;
    out.margin = -1.0;
    out.message = std::move(message);
  };

  if (sigma.member_count() != (std::size_t{1} << n_blocks)) {
    fail("member count != 2^N");
    return out;
  }
  if (!sigma.contains(instance.space.empty_event()) ||
      !sigma.contains(instance.space.full_event())) {
    fail("empty set or full set not a member");
    return out;
  }
  const std::vector<Event> members = sigma.members();
  for (const Event& member : members) {
    if (!sigma.contains(member.complement())) {
      fail("not closed under complement");
      return out;
    }
  }
  // unions: exhaustive for small algebras, sampled pairs beyond
  if (n_blocks <= 6) {
    for (const Event& a : members) {
      for (const Event& b : members) {
        if (!sigma.contains(union_of(a, b))) {
          fail("not closed under union");
          return out;
        }
      }
    }
  } else {
    for (std::size_t k = 0; k < 512; ++k) {
      const Event& a = members[rng.index(members.size())];
      const Event& b = members[rng.index(members.size())];
      if (!sigma.contains(union_of(a, b))) {
        fail("not closed under union");
        return out;
      }
    }
  }
  return out;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    out = std::max(out, std::abs(a[i] - b[i]));
  }
  return out;
}

TrialOutcome dirichlet_trial(TrialRng& rng, std::size_t trial) {
  const RandomInstance instance = random_instance(rng, 16, trial % 2 == 0);
  const EnergyProblem problem(instance.partition, instance.target);
  const ConditionalExpectation closed =
      cond_expectation(instance.target, instance.partition);

  SolverConfig exact_config;
  exact_config.method = SolveMethod::exact;
  const SolverResult exact = minimize(problem, exact_config);

  SolverConfig gd_config;
  gd_config.method = SolveMethod::gradient_descent;
  gd_config.tol = 1e-10;
  const SolverResult gd = minimize(problem, gd_config);

  const double exact_dev = max_abs_diff(exact.coefficients, closed.coefficients);
  const double gd_dev = max_abs_diff(gd.coefficients, closed.coefficients);

  TrialOutcome out;
  out.margin = std::min(1e-12 - exact_dev, 1e-8 - gd_dev);
  if (!gd.converged) out.margin = std::min(out.margin, -1.0);
  out.failed = out.margin < 0.0;
  if (out.failed) {
    out.message = !gd.converged
                      ? "gradient descent did not converge"
                      : format_margin("solver vs closed-form deviation",
                                      std::max(exact_dev, gd_dev));
  }
  return out;
}

}  // namespace

SuiteResult run_suite(Suite suite, std::size_t trials, std::uint64_t seed,
                      std::optional<double> p_override) {
  SuiteResult result;
  result.suite = suite;
  result.trials = trials;
  bool first = true;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    TrialRng rng = TrialRng::for_trial(seed, trial);
    TrialOutcome outcome;
    switch (suite) {
      case Suite::holder:
        outcome = holder_trial(rng, trial, p_override);
        break;
      case Suite::clarkson:
        outcome = clarkson_trial(rng, trial, p_override);
        break;
      case Suite::monotonicity:
        outcome = monotonicity_trial(rng);
        break;
      case Suite::sigma:
        outcome = sigma_trial(rng);
        break;
      case Suite::dirichlet:
        outcome = dirichlet_trial(rng, trial);
        break;
    }
    if (first || outcome.margin < result.worst_slack) {
      result.worst_slack = outcome.margin;
      first = false;
    }
    if (outcome.failed) {
      ++result.failures;
      if (!result.first_failure) {
        result.first_failure = SuiteFailure{trial, outcome.message};
      }
    }
  }
  return result;
}

}  // namespace probvar
