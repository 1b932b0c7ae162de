#pragma once

#include <array>

#include "ehba/game.hpp"
#include "ehba/policy.hpp"

namespace ehba {

// Posterior over a hypothesis set of opponent policies ("types").
struct BeliefState {
  Distribution prior;
  Distribution posterior;
  // Set once every type assigns zero probability to an observed action.
  // From then on the posterior is undefined; we keep it at the prior and
  // the flag stays set for the rest of the play.
  bool degenerate = false;
};

BeliefState make_beliefs(const Distribution& prior);
BeliefState make_uniform_beliefs(int num_types);

// Folds one observed opponent action into the posterior. `prefix` is the
// joint history before the action was taken. Equivalent to multiplying
// the prior by the product of per-step likelihoods and renormalizing, but
// renormalizes each step so long plays cannot underflow.
BeliefState posterior_increment(BeliefState b, const PolicySet& types, const History& prefix,
                                int observed_action);

// Recomputes the posterior over a whole history in one pass.
BeliefState posterior_batch(const Distribution& prior, const PolicySet& types, const History& h);

struct PlannerConfig {
  int horizon = 3;
  // Report per-round averages instead of raw sums over the horizon.
  bool average = true;
};

struct PlannerStats {
  long long expansions = 0;  // payoff-node evaluations
};

// Posterior-weighted mixture over the opponent's next action at history h.
Distribution type_mixture(const PolicySet& types, const Distribution& weights, const History& h);

// Expected future payoff of each own action over `horizon` further rounds,
// assuming we play a best response at every later decision and the
// opponent keeps sampling from the (frozen) weighted type mixture, whose
// policies are re-evaluated on each hypothetical continuation of h.
// Branches with zero reaching probability are skipped, which never changes
// the value.
std::array<double, 2> expected_payoffs_max(const Game& g, const PolicySet& types,
                                           const Distribution& weights, const History& h,
                                           const PlannerConfig& cfg,
                                           PlannerStats* stats = nullptr);

// Picks the action with the highest expected future payoff; ties within
// 1e-9 are broken uniformly at random. A degenerate belief state carries
// no information, so the action is drawn uniformly.
int hba_select(const Game& g, const PolicySet& types, const BeliefState& beliefs, const History& h,
               const PlannerConfig& cfg, RngStream& rng, PlannerStats* stats = nullptr);

// Mean over the rounds of h of the summed pointwise minimum of the two
// policies' action distributions: 1 when they always agree, 0 when their
// supports never overlap. Throws DomainError on an empty history.
double probability_overlap(const BehaviorPolicy& a, const BehaviorPolicy& b, const History& h,
                           Player seat);

}  // namespace ehba
