#pragma once

#include <vector>

#include "ehba/beliefs.hpp"
#include "ehba/experts.hpp"

namespace ehba {

// Per-expert payoff bookkeeping, maintained by the play loop and handed to
// the expert algorithm each round. `observed` holds running averages in
// average mode and accumulated totals in total mode.
struct ExpertStats {
  ExpertStats() = default;
  explicit ExpertStats(int num_experts) : observed(num_experts, 0.0), pulls(num_experts, 0) {}

  std::vector<double> observed;
  std::vector<int> pulls;
  int rounds = 0;

  // Average mode: realized payoff folds into the followed expert's mean.
  void record_average(int chosen, double realized);
  // Total mode with full information: each expert's payoff against the
  // realized opponent action accumulates, followed or not.
  void record_total_full(int chosen, const std::vector<double>& feedback);
  // Total mode with bandit information: the realized payoff is divided by
  // the probability with which the expert was selected.
  void record_total_weighted(int chosen, double realized, double probability);
};

// Running confidence: the mean over past rounds of how strongly the
// (posterior-weighted) types endorsed the opponent's observed actions,
// each round scored as probability-assigned / highest-probability-offered.
struct ConfidenceState {
  double c0 = 1.0;          // confidence before any observation
  double running_sum = 0.0;
  int t = 0;

  double value() const;
};

ConfidenceState make_confidence(double c0);

// Folds one observation into the confidence average. `posterior_at_tau`
// must be the posterior conditioned on `prefix` only, i.e. from before the
// action was observed; with degenerate beliefs that is the prior.
ConfidenceState confidence_update(ConfidenceState c, const PolicySet& types,
                                  const Distribution& posterior_at_tau, const History& prefix,
                                  int observed_action);

struct MixConfig {
  PayoffMode mode = PayoffMode::average;
  // Exponent applied to predicted totals before mixing, to magnify the
  // differences between experts. Total mode only; must be ≥ 1.
  double booster = 3.0;
};

struct PredictedPayoffs {
  std::vector<double> values;  // one per expert, unboosted
  int horizon_used = 0;
};

// Expected payoff over `horizon` further rounds when every future decision
// follows `expert`, while the opponent keeps sampling from the weighted
// type mixture (weights frozen, policies re-evaluated per continuation).
// Per-round average when `average`, raw sum otherwise.
double expert_future_payoff(const Game& g, const BehaviorPolicy& expert, const PolicySet& types,
                            const Distribution& weights, const History& h, int horizon,
                            bool average, PlannerStats* stats = nullptr);

// expert_future_payoff mapped over the expert set; averages exactly when
// mode is average.
PredictedPayoffs predicted_payoffs(const Game& g, const PolicySet& experts,
                                   const PolicySet& types, const Distribution& weights,
                                   const History& h, int horizon, PayoffMode mode,
                                   PlannerStats* stats = nullptr);

// (1-c)·observed + c·predicted elementwise, where total mode first raises
// predictions to the booster power. The endpoints are exact: c = 0 returns
// the observed vector unchanged, c = 1 the (boosted) predictions.
std::vector<double> mix_payoffs(const ExpertStats& stats, const PredictedPayoffs& pred, double c,
                                const MixConfig& mix);

// One wrapped selection step: predict U*, mix with the observed payoffs at
// the current confidence, let the expert algorithm pick, then sample the
// expert to follow and the action it recommends.
struct StepOutcome {
  std::vector<double> predicted;  // unboosted U*
  std::vector<double> mixed;
  double confidence = 1.0;
  Distribution selection;
  int expert = -1;
  int action = -1;
};

StepOutcome ehba_step(ExpertAlgorithm& algo, const Game& g, const PolicySet& experts,
                      const PolicySet& types, const BeliefState& beliefs,
                      const ConfidenceState& conf, const ExpertStats& stats, const History& h,
                      int horizon, const MixConfig& mix, RngStream& rng,
                      PlannerStats* planner_stats = nullptr);

}  // namespace ehba
