#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "probvar/errors.hpp"
#include "probvar/space.hpp"
#include "probvar/suites.hpp"
#include "test_helpers.hpp"

using namespace probvar;
using testing::Die6;
using testing::Skew;
using testing::near;

TEST_CASE("space construction validates and normalizes") {
  SUBCASE("die fixture normalizes to a true probability measure") {
    Die6 d;
    CHECK(d.space.size() == 6);
    CHECK(d.space.prob(d.space.full_event()) == 1.0);
    CHECK(near(d.space.weight(0), 1.0 / 6.0));
  }
  SUBCASE("skew fixture accepted as-is") {
    Skew s;
    CHECK(s.space.weight(0) == 0.5);
    CHECK(s.space.prob(s.space.full_event()) == 1.0);
  }
  SUBCASE("sum far from 1 rejected") {
    CHECK_THROWS_AS(ProbabilitySpace::make({0.5, 0.3}), NotNormalized);
  }
  SUBCASE("slight drift within 1e-9 renormalized") {
    const ProbabilitySpace space =
        ProbabilitySpace::make({0.25 + 4e-10, 0.25, 0.25, 0.25});
    CHECK(space.prob(space.full_event()) == 1.0);
    double sum = 0.0;
    for (double w : space.weights()) sum += w;
    CHECK(near(sum, 1.0, 1e-15));
  }
  SUBCASE("empty weights rejected") {
    CHECK_THROWS_AS(ProbabilitySpace::make({}), Empty);
  }
  SUBCASE("negative weight rejected") {
    CHECK_THROWS_AS(ProbabilitySpace::make({1.2, -0.2}), NegativeWeight);
  }
  SUBCASE("non-finite weight rejected, including NaN") {
    CHECK_THROWS_AS(
        ProbabilitySpace::make({std::numeric_limits<double>::quiet_NaN(), 1.0}),
        NonFiniteValue);
    CHECK_THROWS_AS(
        ProbabilitySpace::make({std::numeric_limits<double>::infinity()}),
        NonFiniteValue);
  }
  SUBCASE("zero-weight outcomes are allowed") {
    const ProbabilitySpace space = ProbabilitySpace::make({0.5, 0.0, 0.5});
    CHECK(space.positive_mass(0));
    CHECK(!space.positive_mass(1));
  }
  SUBCASE("labels must match the outcome count") {
    CHECK_THROWS_AS(ProbabilitySpace::make({0.5, 0.5}, {"only-one"}),
                    LengthMismatch);
    const ProbabilitySpace space =
        ProbabilitySpace::make({0.5, 0.5}, {"heads", "tails"});
    CHECK(space.labels()[1] == "tails");
  }
}

TEST_CASE("events are index sets bound to their space") {
  Die6 d;
  SUBCASE("set semantics fold duplicates") {
    const Event e = d.space.make_event({1, 1, 3});
    CHECK(e.count() == 2);
    CHECK(e.contains(1));
    CHECK(e.contains(3));
    CHECK(!e.contains(0));
  }
  SUBCASE("out-of-range index rejected") {
    CHECK_THROWS_AS(d.space.make_event({6}), IndexOutOfRange);
  }
  SUBCASE("complement of the event of odd outcomes") {
    const Event c = d.a.complement();
    CHECK(c == d.space.make_event({0, 2, 4}));
    CHECK(d.a.complement().complement() == d.a);
    CHECK(d.space.full_event().complement() == d.space.empty_event());
  }
  SUBCASE("union and intersection") {
    const Event b12 = union_of(d.partition.block(0), d.partition.block(1));
    CHECK(b12 == d.space.make_event({0, 1, 2, 3}));
    const Event meet = intersection(d.a, d.partition.block(1));
    CHECK(meet == d.space.make_event({3}));
    CHECK((d.a | d.a.complement()) == d.space.full_event());
    CHECK((d.a & d.a.complement()) == d.space.empty_event());
  }
  SUBCASE("subset relation") {
    CHECK(d.space.empty_event().subset_of(d.a));
    CHECK(d.a.subset_of(d.space.full_event()));
    CHECK(!d.a.subset_of(d.partition.block(0)));
  }
  SUBCASE("operations across different spaces rejected") {
    Skew s;
    CHECK_THROWS_AS(union_of(d.a, s.a), SpaceMismatch);
    CHECK_THROWS_AS(intersection(d.a, s.a), SpaceMismatch);
    CHECK_THROWS_AS(d.space.prob(s.a), SpaceMismatch);
  }
  SUBCASE("members round-trips the index list") {
    const std::vector<std::size_t> idx = d.a.members();
    CHECK(idx == std::vector<std::size_t>{1, 3, 5});
  }
}

TEST_CASE("probability measure on desk fixtures") {
  Die6 d;
  Skew s;
  CHECK(near(d.space.prob(d.a), 0.5));
  CHECK(d.space.prob(d.space.empty_event()) == 0.0);
  CHECK(d.space.prob(d.space.full_event()) == 1.0);
  CHECK(near(s.space.prob(s.space.make_event({0, 1})), 0.8));
  CHECK(near(d.space.prob(d.partition.block(0)), 1.0 / 3.0));
}

TEST_CASE("measure axioms hold on random spaces") {
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    TrialRng rng = TrialRng::for_trial(2024, trial);
    const ProbabilitySpace space = random_space(rng);
    std::vector<std::size_t> first, second, subset;
    for (std::size_t i = 0; i < space.size(); ++i) {
      switch (rng.index(3)) {
        case 0:
          first.push_back(i);
          if (rng.chance(0.5)) subset.push_back(i);
          break;
        case 1: second.push_back(i); break;
        default: break;
      }
    }
    const Event e1 = space.make_event(first);
    const Event e2 = space.make_event(second);

    // finite additivity over disjoint events
    CHECK(near(space.prob(union_of(e1, e2)), space.prob(e1) + space.prob(e2)));
    // complement law
    CHECK(near(space.prob(e1) + space.prob(e1.complement()), 1.0));
    // monotonicity
    const Event sub = space.make_event(subset);
    CHECK(sub.subset_of(e1));
    CHECK(space.prob(sub) <= space.prob(e1) + 1e-15);
    // range
    CHECK(space.prob(e1) >= 0.0);
    CHECK(space.prob(e1) <= 1.0 + 1e-15);
  }
}

TEST_CASE("conditional probability") {
  Die6 d;
  Skew s;
  SUBCASE("desk values") {
    CHECK(near(d.space.cond_prob(d.a, d.partition.block(0)), 0.5));
    CHECK(near(s.space.cond_prob(s.a, s.partition.block(1)), 0.6));
  }
  SUBCASE("conditioning an event on itself gives 1") {
    CHECK(d.space.cond_prob(d.a, d.a) == 1.0);
  }
  SUBCASE("conditioning on the full space equals the plain measure exactly") {
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
      TrialRng rng = TrialRng::for_trial(77, trial);
      const ProbabilitySpace space = random_space(rng);
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < space.size(); ++i) {
        if (rng.chance(0.5)) idx.push_back(i);
      }
      const Event e = space.make_event(idx);
      CHECK(space.cond_prob(e, space.full_event()) == space.prob(e));
    }
  }
  SUBCASE("conditioning on a null event rejected") {
    CHECK_THROWS_AS(d.space.cond_prob(d.a, d.space.empty_event()),
                    ZeroConditioningEvent);
    const ProbabilitySpace space = ProbabilitySpace::make({1.0, 0.0});
    CHECK_THROWS_AS(
        space.cond_prob(space.make_event({0}), space.make_event({1})),
        ZeroConditioningEvent);
  }
}

TEST_CASE("space identity follows the weight vector") {
  Die6 d;
  const ProbabilitySpace copy = d.space;
  CHECK(d.space.same_as(copy));
  const ProbabilitySpace rebuilt =
      ProbabilitySpace::make(std::vector<double>(6, 1.0 / 6.0));
  CHECK(d.space.same_as(rebuilt));
  Skew s;
  CHECK(!d.space.same_as(s.space));

  // events from an equal-weight rebuild interoperate
  const Event e = rebuilt.make_event({1, 3, 5});
  CHECK(near(d.space.prob(e), 0.5));
  CHECK(union_of(d.a, e) == d.a);
}
