#include "ehba/meta.hpp"

#include <algorithm>
#include <cmath>

#include "ehba/errors.hpp"

namespace ehba {
namespace {

void check_expert_index(const ExpertStats& s, int chosen, const char* where) {
  if (chosen < 0 || chosen >= static_cast<int>(s.observed.size())) {
    throw ConfigError(std::string(where) + ": expert index out of range");
  }
}

class FollowPlanner {
 public:
  FollowPlanner(const Game& g, const BehaviorPolicy& expert, const PolicySet& types,
                const Distribution& weights, PlannerStats* stats)
      : g_(g),
        expert_(expert),
        types_(types),
        weights_(weights),
        stats_(stats),
        agent_(other(types.seat)) {}

  double value(History& h, int depth) {
    const Distribution mine = expert_.action_distribution(h, agent_);
    const Distribution mix = type_mixture(types_, weights_, h);
    double v = 0.0;
    for (int ai = 0; ai < 2; ++ai) {
      if (mine[ai] <= 0.0) continue;
      for (int aj = 0; aj < 2; ++aj) {
        if (mix[aj] <= 0.0) continue;
        if (stats_) ++stats_->expansions;
        double q = g_.own_payoff(agent_, ai, aj);
        if (depth > 1) {
          h.push_back(agent_ == Player::row ? JointAction{ai, aj} : JointAction{aj, ai});
          q += value(h, depth - 1);
          h.pop_back();
        }
        v += mine[ai] * mix[aj] * q;
      }
    }
    return v;
  }

 private:
  const Game& g_;
  const BehaviorPolicy& expert_;
  const PolicySet& types_;
  const Distribution& weights_;
  PlannerStats* stats_;
  Player agent_;
};

}  // namespace

void ExpertStats::record_average(int chosen, double realized) {
  check_expert_index(*this, chosen, "record_average");
  pulls[chosen]++;
  observed[chosen] += (realized - observed[chosen]) / pulls[chosen];
  rounds++;
}

void ExpertStats::record_total_full(int chosen, const std::vector<double>& feedback) {
  check_expert_index(*this, chosen, "record_total_full");
  if (feedback.size() != observed.size()) {
    throw ConfigError("record_total_full: feedback length mismatch");
  }
  for (size_t k = 0; k < observed.size(); ++k) observed[k] += feedback[k];
  pulls[chosen]++;
  rounds++;
}

void ExpertStats::record_total_weighted(int chosen, double realized, double probability) {
  check_expert_index(*this, chosen, "record_total_weighted");
  if (!(probability > 0.0) || probability > 1.0) {
    throw ConfigError("record_total_weighted: selection probability outside (0,1]");
  }
  observed[chosen] += realized / probability;
  pulls[chosen]++;
  rounds++;
}

double ConfidenceState::value() const {
  if (t == 0) return c0;
  return std::clamp(running_sum / t, 0.0, 1.0);
}

ConfidenceState make_confidence(double c0) {
  if (!(c0 >= 0.0 && c0 <= 1.0)) throw ConfigError("confidence: c0 must lie in [0,1]");
  return ConfidenceState{c0, 0.0, 0};
}

ConfidenceState confidence_update(ConfidenceState c, const PolicySet& types,
                                  const Distribution& posterior_at_tau, const History& prefix,
                                  int observed_action) {
  if (posterior_at_tau.size() != static_cast<int>(types.policies.size())) {
    throw ConfigError("confidence_update: posterior does not match type count");
  }
  if (observed_action != 0 && observed_action != 1) {
    throw ConfigError("confidence_update: action out of range");
  }
  double term = 0.0;
  for (int k = 0; k < posterior_at_tau.size(); ++k) {
    if (posterior_at_tau[k] <= 0.0) continue;
    const Distribution d = types.policies[k]->action_distribution(prefix, types.seat);
    const double top = std::max(d[0], d[1]);
    if (top <= 0.0) throw PolicyError("confidence_update: type offers no action at all");
    term += posterior_at_tau[k] * d[observed_action] / top;
  }
  c.running_sum += term;
  c.t += 1;
  return c;
}

double expert_future_payoff(const Game& g, const BehaviorPolicy& expert, const PolicySet& types,
                            const Distribution& weights, const History& h, int horizon,
                            bool average, PlannerStats* stats) {
  if (horizon < 1) throw ConfigError("expert_future_payoff: horizon must be positive");
  if (weights.size() != static_cast<int>(types.policies.size()) || types.policies.empty()) {
    throw ConfigError("expert_future_payoff: weights do not match type set");
  }
  History scratch = h;
  scratch.reserve(h.size() + horizon);
  FollowPlanner planner(g, expert, types, weights, stats);
  const double v = planner.value(scratch, horizon);
  return average ? v / horizon : v;
}

PredictedPayoffs predicted_payoffs(const Game& g, const PolicySet& experts,
                                   const PolicySet& types, const Distribution& weights,
                                   const History& h, int horizon, PayoffMode mode,
                                   PlannerStats* stats) {
  PredictedPayoffs out;
  out.horizon_used = horizon;
  out.values.reserve(experts.policies.size());
  for (const PolicyPtr& expert : experts.policies) {
    out.values.push_back(expert_future_payoff(g, *expert, types, weights, h, horizon,
                                              mode == PayoffMode::average, stats));
  }
  return out;
}

std::vector<double> mix_payoffs(const ExpertStats& stats, const PredictedPayoffs& pred, double c,
                                const MixConfig& mix) {
  if (stats.observed.size() != pred.values.size()) {
    throw ConfigError("mix_payoffs: observed and predicted lengths differ");
  }
  if (!(c >= 0.0 && c <= 1.0)) throw ConfigError("mix_payoffs: confidence outside [0,1]");
  if (mix.mode == PayoffMode::total && mix.booster < 1.0) {
    throw ConfigError("mix_payoffs: booster must be at least 1");
  }

  const auto effective = [&mix](double u) {
    if (mix.mode == PayoffMode::average || mix.booster == 1.0) return u;
    if (u < 0.0) {
      throw DomainError("mix_payoffs: booster needs non-negative predicted totals");
    }
    return std::pow(u, mix.booster);
  };

  if (c == 0.0) return stats.observed;
  std::vector<double> out(pred.values.size());
  if (c == 1.0) {
    for (size_t k = 0; k < out.size(); ++k) out[k] = effective(pred.values[k]);
    return out;
  }
  for (size_t k = 0; k < out.size(); ++k) {
    out[k] = (1.0 - c) * stats.observed[k] + c * effective(pred.values[k]);
  }
  return out;
}

StepOutcome ehba_step(ExpertAlgorithm& algo, const Game& g, const PolicySet& experts,
                      const PolicySet& types, const BeliefState& beliefs,
                      const ConfidenceState& conf, const ExpertStats& stats, const History& h,
                      int horizon, const MixConfig& mix, RngStream& rng,
                      PlannerStats* planner_stats) {
  if (static_cast<int>(experts.policies.size()) != algo.num_experts() ||
      experts.policies.size() != stats.observed.size()) {
    throw ConfigError("ehba_step: expert set, algorithm and stats disagree on expert count");
  }
  if (experts.seat != other(types.seat)) {
    throw ConfigError("ehba_step: experts and types must sit on opposite seats");
  }
  StepOutcome out;
  PredictedPayoffs pred = predicted_payoffs(g, experts, types, beliefs.posterior, h, horizon,
                                            mix.mode, planner_stats);
  out.confidence = conf.value();
  out.mixed = mix_payoffs(stats, pred, out.confidence, mix);
  out.selection = algo.select(out.mixed, rng);
  out.selection.validate();
  out.expert = out.selection.sample(rng);
  out.action = sample_action(*experts.policies[out.expert], h, other(types.seat), rng);
  out.predicted = std::move(pred.values);
  return out;
}

}  // namespace ehba
