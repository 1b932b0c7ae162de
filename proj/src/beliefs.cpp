#include "ehba/beliefs.hpp"

#include <algorithm>
#include <cmath>

#include "ehba/errors.hpp"

namespace ehba {
namespace {

void check_types(const PolicySet& types, const Distribution& weights, const char* where) {
  if (types.policies.empty()) throw ConfigError(std::string(where) + ": empty type set");
  if (weights.size() != static_cast<int>(types.policies.size())) {
    throw ConfigError(std::string(where) + ": weight vector does not match type count");
  }
}

// Depth-first evaluation of the planning recursion. The weighted type
// mixture is fixed at the root; the policies themselves are re-queried at
// every hypothetical node.
class Planner {
 public:
  Planner(const Game& g, const PolicySet& types, const Distribution& weights, PlannerStats* stats)
      : g_(g), types_(types), weights_(weights), stats_(stats), agent_(other(types.seat)) {}

  std::array<double, 2> node_values(History& h, int depth) {
    const Distribution mix = type_mixture(types_, weights_, h);
    std::array<double, 2> e{0.0, 0.0};
    for (int aj = 0; aj < 2; ++aj) {
      if (mix[aj] <= 0.0) continue;  // unreachable branch, contributes nothing
      for (int ai = 0; ai < 2; ++ai) e[ai] += mix[aj] * q_value(h, depth, ai, aj);
    }
    return e;
  }

 private:
  double q_value(History& h, int depth, int ai, int aj) {
    if (stats_) ++stats_->expansions;
    const double u = g_.own_payoff(agent_, ai, aj);
    if (depth <= 1) return u;
    h.push_back(agent_ == Player::row ? JointAction{ai, aj} : JointAction{aj, ai});
    const auto e = node_values(h, depth - 1);
    h.pop_back();
    return u + std::max(e[0], e[1]);
  }

  const Game& g_;
  const PolicySet& types_;
  const Distribution& weights_;
  PlannerStats* stats_;
  Player agent_;
};

}  // namespace

BeliefState make_beliefs(const Distribution& prior) {
  prior.validate();
  return BeliefState{prior, prior, false};
}

BeliefState make_uniform_beliefs(int num_types) {
  if (num_types < 1) throw ConfigError("make_uniform_beliefs: need at least one type");
  return make_beliefs(Distribution::uniform(num_types));
}

BeliefState posterior_increment(BeliefState b, const PolicySet& types, const History& prefix,
                                int observed_action) {
  check_types(types, b.posterior, "posterior_increment");
  if (observed_action != 0 && observed_action != 1) {
    throw ConfigError("posterior_increment: action out of range");
  }
  if (b.degenerate) return b;  // stays undefined for the rest of the play

  Distribution next = b.posterior;
  double mass = 0.0;
  for (int k = 0; k < next.size(); ++k) {
    if (next[k] > 0.0) {
      next[k] *= types.policies[k]->action_probability(prefix, types.seat, observed_action);
    }
    mass += next[k];
  }
  if (mass > 0.0) {
    for (int k = 0; k < next.size(); ++k) next[k] /= mass;
    b.posterior = next;
  } else {
    b.posterior = b.prior;
    b.degenerate = true;
  }
  return b;
}

BeliefState posterior_batch(const Distribution& prior, const PolicySet& types, const History& h) {
  BeliefState b = make_beliefs(prior);
  History prefix;
  prefix.reserve(h.size());
  for (const JointAction& step : h) {
    const int observed = types.seat == Player::row ? step.row : step.col;
    b = posterior_increment(std::move(b), types, prefix, observed);
    prefix.push_back(step);
  }
  return b;
}

Distribution type_mixture(const PolicySet& types, const Distribution& weights, const History& h) {
  Distribution mix{0.0, 0.0};
  for (int k = 0; k < weights.size(); ++k) {
    if (weights[k] <= 0.0) continue;
    const Distribution d = types.policies[k]->action_distribution(h, types.seat);
    mix[0] += weights[k] * d[0];
    mix[1] += weights[k] * d[1];
  }
  return mix;
}

std::array<double, 2> expected_payoffs_max(const Game& g, const PolicySet& types,
                                           const Distribution& weights, const History& h,
                                           const PlannerConfig& cfg, PlannerStats* stats) {
  check_types(types, weights, "expected_payoffs_max");
  if (cfg.horizon < 1) throw ConfigError("expected_payoffs_max: horizon must be positive");

  History scratch = h;
  scratch.reserve(h.size() + cfg.horizon);
  Planner planner(g, types, weights, stats);
  auto e = planner.node_values(scratch, cfg.horizon);
  if (cfg.average) {
    e[0] /= cfg.horizon;
    e[1] /= cfg.horizon;
  }
  return e;
}

int hba_select(const Game& g, const PolicySet& types, const BeliefState& beliefs, const History& h,
               const PlannerConfig& cfg, RngStream& rng, PlannerStats* stats) {
  if (beliefs.degenerate) return rng.next_below(2);

  const auto e = expected_payoffs_max(g, types, beliefs.posterior, h, cfg, stats);
  const double best = std::max(e[0], e[1]);
  if (e[0] >= best - 1e-9 && e[1] >= best - 1e-9) return rng.next_below(2);
  return e[0] >= e[1] ? 0 : 1;
}

double probability_overlap(const BehaviorPolicy& a, const BehaviorPolicy& b, const History& h,
                           Player seat) {
  if (h.empty()) throw DomainError("probability_overlap: empty history");
  History prefix;
  prefix.reserve(h.size());
  double total = 0.0;
  for (const JointAction& step : h) {
    const Distribution da = a.action_distribution(prefix, seat);
    const Distribution db = b.action_distribution(prefix, seat);
    for (int k = 0; k < 2; ++k) total += std::min(da[k], db[k]);
    prefix.push_back(step);
  }
  return total / static_cast<double>(h.size());
}

}  // namespace ehba
