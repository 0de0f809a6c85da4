#include <doctest.h>

#include <cstdint>
#include <set>
#include <vector>

#include "probvar/suites.hpp"

using namespace probvar;

TEST_CASE("trial rng is deterministic and decorrelated") {
  TrialRng a(42);
  TrialRng b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  TrialRng t0 = TrialRng::for_trial(7, 0);
  TrialRng t1 = TrialRng::for_trial(7, 1);
  CHECK(t0.next_u64() != t1.next_u64());

  TrialRng r0 = TrialRng::for_trial(7, 0);
  TrialRng r0again = TrialRng::for_trial(7, 0);
  CHECK(r0.next_u64() == r0again.next_u64());
}

TEST_CASE("rng draws respect their ranges") {
  TrialRng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double v = rng.uniform(-3.0, 2.0);
    CHECK(v >= -3.0);
    CHECK(v < 2.0);
    CHECK(rng.index(7) < 7);
  }
  CHECK(rng.index(1) == 0);
  TrialRng coin(12);
  CHECK(!coin.chance(0.0));
  CHECK(coin.chance(1.0));
}

TEST_CASE("random spaces are valid probability spaces") {
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    TrialRng rng = TrialRng::for_trial(13, trial);
    const ProbabilitySpace space = random_space(rng);
    CHECK(space.size() >= 1);
    CHECK(space.size() <= 64);
    CHECK(space.prob(space.full_event()) == 1.0);
    for (double w : space.weights()) CHECK(w > 0.0);
  }
}

TEST_CASE("random instances satisfy the generator contract") {
  std::size_t zero_weight_seen = 0;
  for (std::uint64_t trial = 0; trial < 300; ++trial) {
    TrialRng rng = TrialRng::for_trial(14, trial);
    const RandomInstance inst = random_instance(rng, 16, trial % 2 == 0);
    CHECK(inst.space.size() <= 64);
    CHECK(inst.partition.block_count() >= 1);
    CHECK(inst.partition.block_count() <= 16);
    // block masses stay within a factor 4 * max_blocks of each other, the
    // bound the gradient-descent accuracy contract rests on
    for (std::size_t j = 0; j < inst.partition.block_count(); ++j) {
      CHECK(inst.partition.block_prob(j) >= 1.0 / 64.0 - 1e-12);
    }
    for (double w : inst.space.weights()) {
      if (w == 0.0) ++zero_weight_seen;
    }
    CHECK(inst.target.space().same_as(inst.space));
    CHECK(inst.event.space().same_as(inst.space));
  }
  CHECK(zero_weight_seen > 0);  // the null-outcome path is exercised
}

TEST_CASE("suite names round-trip") {
  for (Suite s : {Suite::holder, Suite::clarkson, Suite::monotonicity,
                  Suite::sigma, Suite::dirichlet}) {
    CHECK(suite_from_name(suite_name(s)) == s);
  }
  CHECK(!suite_from_name("unknown").has_value());
  CHECK(!suite_from_name("").has_value());
}

TEST_CASE("all suites pass at modest trial counts") {
  for (Suite s : {Suite::holder, Suite::clarkson, Suite::monotonicity,
                  Suite::sigma, Suite::dirichlet}) {
    const SuiteResult r = run_suite(s, 100, 2026);
    CHECK(r.trials == 100);
    CHECK(r.failures == 0);
    CHECK(!r.first_failure.has_value());
    CHECK(r.worst_slack >= -1e-12);
  }
}

TEST_CASE("suite results are reproducible for a fixed seed") {
  for (Suite s : {Suite::holder, Suite::clarkson, Suite::sigma}) {
    const SuiteResult a = run_suite(s, 50, 99);
    const SuiteResult b = run_suite(s, 50, 99);
    CHECK(a.failures == b.failures);
    CHECK(a.worst_slack == b.worst_slack);
  }
}

TEST_CASE("exponent override pins the grid") {
  const SuiteResult holder3 = run_suite(Suite::holder, 100, 5, 3.0);
  CHECK(holder3.failures == 0);
  const SuiteResult clark2 = run_suite(Suite::clarkson, 100, 5, 2.0);
  CHECK(clark2.failures == 0);
  // at p = 2 the margin is -|slack| of an identity, so it stays tiny
  CHECK(clark2.worst_slack >= -1e-12);
  CHECK(clark2.worst_slack <= 0.0);
}
