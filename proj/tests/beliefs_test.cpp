#include "ehba/beliefs.hpp"

#include <cmath>
#include <memory>

#include "doctest.h"
#include "ehba/errors.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace ehba;
using namespace ehba::testutil;

namespace {

PolicySet make_types(std::vector<PolicyPtr> ps, Player seat) {
  PolicySet set;
  set.policies = std::move(ps);
  set.seat = seat;
  return set;
}

History random_history(RngStream& rng, int rounds) {
  History h;
  for (int t = 0; t < rounds; ++t) h.push_back({rng.next_below(2), rng.next_below(2)});
  return h;
}

}  // namespace

TEST_CASE("single observation matches Bayes' rule") {
  const auto types = make_types({std::make_shared<StaticMixPolicy>(Distribution{0.8, 0.2}),
                                 std::make_shared<StaticMixPolicy>(Distribution{0.5, 0.5})},
                                Player::col);
  BeliefState b = make_uniform_beliefs(2);
  b = posterior_increment(b, types, {}, 0);
  // 0.5*0.8 vs 0.5*0.5, normalized.
  CHECK(b.posterior[0] == doctest::Approx(8.0 / 13.0));
  CHECK(b.posterior[1] == doctest::Approx(5.0 / 13.0));
  CHECK_FALSE(b.degenerate);
}

TEST_CASE("posterior matches the single-normalization product on short histories") {
  std::vector<PolicySet> sets;
  sets.push_back(make_types({std::make_shared<HashPolicy>(11), std::make_shared<HashPolicy>(22),
                             std::make_shared<HashPolicy>(33)},
                            Player::col));
  sets.push_back(make_types({std::make_shared<GrimPolicy>(2),
                             std::make_shared<StaticMixPolicy>(Distribution{0.6, 0.4}),
                             std::make_shared<UniformPolicy>()},
                            Player::row));

  RngStream rng(404u, "beliefs-histories");
  for (const auto& types : sets) {
    const Distribution prior{0.5, 0.3, 0.2};
    for (int rep = 0; rep < 20; ++rep) {
      const History h = random_history(rng, 12);
      const BeliefState fast = posterior_batch(prior, types, h);
      const BeliefState slow = naive_posterior(prior, types, h);
      REQUIRE(fast.degenerate == slow.degenerate);
      if (!fast.degenerate) {
        for (int k = 0; k < 3; ++k) {
          REQUIRE(fast.posterior[k] == doctest::Approx(slow.posterior[k]).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("incremental and batch posteriors agree to 1e-12 over long plays") {
  const auto types = make_types({std::make_shared<StaticMixPolicy>(Distribution{0.55, 0.45}),
                                 std::make_shared<HashPolicy>(7)},
                                Player::col);
  RngStream rng(77u, "beliefs-long");
  const History h = random_history(rng, 1500);

  BeliefState inc = make_uniform_beliefs(2);
  History prefix;
  for (const JointAction& step : h) {
    inc = posterior_increment(inc, types, prefix, step.col);
    prefix.push_back(step);
  }
  const BeliefState batch = posterior_batch(Distribution::uniform(2), types, h);
  REQUIRE_FALSE(batch.degenerate);
  for (int k = 0; k < 2; ++k) {
    CHECK(std::abs(inc.posterior[k] - batch.posterior[k]) <= 1e-12);
  }
  CHECK(inc.posterior.sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("long indifferent plays do not underflow into fake degeneracy") {
  // Both types give every action probability ~0.5; a single product over
  // 2000 rounds would underflow to zero for every type. The stepwise
  // filter must stay healthy and keep the posterior near the prior.
  const auto types = make_types({std::make_shared<StaticMixPolicy>(Distribution{0.5, 0.5}),
                                 std::make_shared<StaticMixPolicy>(Distribution{0.499, 0.501})},
                                Player::col);
  RngStream rng(31u, "beliefs-underflow");
  const History h = random_history(rng, 2000);
  const BeliefState b = posterior_batch(Distribution::uniform(2), types, h);
  CHECK_FALSE(b.degenerate);
  CHECK(b.posterior[0] == doctest::Approx(0.5).epsilon(0.2));
  // And the textbook product indeed collapses here, motivating the filter.
  CHECK(naive_posterior(Distribution::uniform(2), types, h).degenerate);
}

TEST_CASE("impossible observations flag the posterior degenerate, stickily") {
  const auto types = make_types(
      {std::make_shared<ConstantPolicy>(0), std::make_shared<ConstantPolicy>(1)}, Player::col);
  BeliefState b = make_beliefs(Distribution{0.7, 0.3});

  b = posterior_increment(b, types, {}, 0);
  CHECK(b.posterior[0] == doctest::Approx(1.0));
  CHECK_FALSE(b.degenerate);

  // The all-zero step: the surviving type cannot have played 1.
  b = posterior_increment(b, types, {{0, 0}}, 1);
  CHECK(b.degenerate);
  CHECK(b.posterior[0] == doctest::Approx(0.7));
  CHECK(b.posterior[1] == doctest::Approx(0.3));

  // Later perfectly explainable observations do not revive it.
  b = posterior_increment(b, types, {{0, 0}, {0, 1}}, 0);
  CHECK(b.degenerate);
  CHECK(b.posterior[0] == doctest::Approx(0.7));
}

TEST_CASE("planner reproduces the brute-force recursion") {
  const Game pd = testutil::unit_pd();
  const Game skew = normalized(testutil::make_game("skew", {2, 4, 1, 3}, {3, 1, 4, 2}));

  std::vector<PolicySet> sets;
  sets.push_back(make_types({std::make_shared<HashPolicy>(101), std::make_shared<HashPolicy>(202)},
                            Player::col));
  // Includes a zero-weight type and a deterministic type so branch
  // skipping gets exercised.
  sets.push_back(make_types({std::make_shared<GrimPolicy>(4), std::make_shared<ConstantPolicy>(1),
                             std::make_shared<HashPolicy>(303)},
                            Player::col));
  sets.push_back(make_types({std::make_shared<HashPolicy>(55)}, Player::row));

  RngStream rng(2024u, "planner-histories");
  for (const Game* g : {&pd, &skew}) {
    for (const auto& types : sets) {
      Distribution w;
      if (types.policies.size() == 1) {
        w = Distribution{1.0};
      } else if (types.policies.size() == 2) {
        w = Distribution{0.25, 0.75};
      } else {
        w = Distribution{0.6, 0.4, 0.0};
      }
      for (int depth = 1; depth <= 4; ++depth) {
        const History h = random_history(rng, rng.next_below(4));
        const auto want = oracle_plan_values(*g, types, w, h, depth);
        const auto got_total =
            expected_payoffs_max(*g, types, w, h, {depth, false});
        const auto got_avg = expected_payoffs_max(*g, types, w, h, {depth, true});
        for (int a = 0; a < 2; ++a) {
          REQUIRE(got_total[a] == doctest::Approx(want[a]).epsilon(1e-12));
          REQUIRE(got_avg[a] == doctest::Approx(want[a] / depth).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("planning against a grim type from an empty history") {
  // While the clean-window requirement is unmet the grim type defects, so
  // over a 3-round horizon the opponent defects throughout: cooperating
  // first earns 0 + 1/3 + 1/3, defecting earns 1/3 each round.
  const Game pd = testutil::unit_pd();
  const auto types = make_types({std::make_shared<GrimPolicy>(4)}, Player::col);
  const auto avg = expected_payoffs_max(pd, types, Distribution{1.0}, {}, {3, true});
  CHECK(avg[0] == doctest::Approx(2.0 / 9.0));
  CHECK(avg[1] == doctest::Approx(1.0 / 3.0));
  const auto total = expected_payoffs_max(pd, types, Distribution{1.0}, {}, {3, false});
  CHECK(total[0] == doctest::Approx(2.0 / 3.0));
  CHECK(total[1] == doctest::Approx(1.0));
}

TEST_CASE("expansion counts follow the branching structure") {
  const Game pd = testutil::unit_pd();
  const auto rich = make_types(
      {std::make_shared<HashPolicy>(1), std::make_shared<HashPolicy>(2)}, Player::col);
  // Both opponent actions always possible: 4^1 + ... + 4^h evaluations.
  for (int h = 1; h <= 4; ++h) {
    PlannerStats stats;
    expected_payoffs_max(pd, rich, Distribution{0.5, 0.5}, {}, {h, true}, &stats);
    long long want = 0, pow = 1;
    for (int d = 1; d <= h; ++d) {
      pow *= 4;
      want += pow;
    }
    CHECK(stats.expansions == want);
  }
  // A deterministic opponent leaves one reachable branch per node.
  const auto lone = make_types({std::make_shared<ConstantPolicy>(1)}, Player::col);
  PlannerStats stats;
  expected_payoffs_max(pd, lone, Distribution{1.0}, {}, {3, true}, &stats);
  CHECK(stats.expansions == 2 + 4 + 8);
}

TEST_CASE("action selection takes the better plan and randomizes only ties") {
  const Game pd = testutil::unit_pd();
  const auto types = make_types({std::make_shared<GrimPolicy>(4)}, Player::col);
  const BeliefState b = make_uniform_beliefs(1);
  RngStream rng(5u, "select");
  for (int k = 0; k < 32; ++k) {
    CHECK(hba_select(pd, types, b, {}, {3, true}, rng) == 1);
  }

  // All payoffs equal: a genuine tie, both actions must show up.
  const Game flat = testutil::make_game("flat", {1, 1, 1, 1}, {1, 1, 1, 1});
  bool saw[2] = {false, false};
  for (int k = 0; k < 64; ++k) saw[hba_select(flat, types, b, {}, {2, true}, rng)] = true;
  CHECK(saw[0]);
  CHECK(saw[1]);

  // Degenerate beliefs carry no signal: uniform choice.
  BeliefState dead = b;
  dead.degenerate = true;
  bool saw2[2] = {false, false};
  for (int k = 0; k < 64; ++k) saw2[hba_select(pd, types, dead, {}, {3, true}, rng)] = true;
  CHECK(saw2[0]);
  CHECK(saw2[1]);
}

TEST_CASE("planner and posterior reject ill-formed inputs") {
  const Game pd = testutil::unit_pd();
  const auto types = make_types({std::make_shared<UniformPolicy>()}, Player::col);
  CHECK_THROWS_AS(expected_payoffs_max(pd, types, Distribution{1.0}, {}, {0, true}), ConfigError);
  CHECK_THROWS_AS(expected_payoffs_max(pd, types, Distribution{0.5, 0.5}, {}, {2, true}),
                  ConfigError);
  CHECK_THROWS_AS(posterior_increment(make_uniform_beliefs(1), types, {}, 2), ConfigError);
  CHECK_THROWS_AS(make_uniform_beliefs(0), ConfigError);
  PolicySet empty;
  CHECK_THROWS_AS(posterior_batch(Distribution{1.0}, empty, {{0, 0}}), ConfigError);
}

TEST_CASE("probability overlap measures shared behaviour over a play") {
  const ConstantPolicy c0(0), c1(1);
  const UniformPolicy u;
  const History h{{0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}};

  CHECK(probability_overlap(c0, c0, h, Player::col) == doctest::Approx(1.0));
  CHECK(probability_overlap(c0, c1, h, Player::col) == doctest::Approx(0.0));
  CHECK(probability_overlap(u, c0, h, Player::col) == doctest::Approx(0.5));

  // Grim-4 plays like a pure defector until the window fills at round 4:
  // agreement on 4 of 5 prefixes.
  const GrimPolicy grim(4);
  CHECK(probability_overlap(grim, c1, h, Player::col) == doctest::Approx(0.8));

  CHECK_THROWS_AS(probability_overlap(c0, c1, {}, Player::col), DomainError);
}
