#pragma once

// Slow, structurally independent reference implementations used to verify
// the library's Bayes filter and planners. These favour clarity over
// speed: explicit history copies, per-type outer sums, no branch
// skipping, single end-of-history normalization.

#include <array>
#include <cstdint>
#include <vector>

#include "ehba/beliefs.hpp"
#include "ehba/game.hpp"
#include "ehba/policy.hpp"
#include "ehba/rng.hpp"

namespace ehba::testutil {

// Posterior by the textbook route: multiply the whole likelihood product
// out per type, then normalize once. Underflows on long histories, which
// is exactly why the library does it differently; use on short ones.
inline BeliefState naive_posterior(const Distribution& prior, const PolicySet& types,
                                   const History& h) {
  std::vector<double> product(types.policies.size(), 1.0);
  History prefix;
  for (const JointAction& step : h) {
    const int observed = types.seat == Player::row ? step.row : step.col;
    for (size_t k = 0; k < types.policies.size(); ++k) {
      product[k] *= types.policies[k]->action_probability(prefix, types.seat, observed);
    }
    prefix.push_back(step);
  }
  BeliefState b{prior, prior, false};
  double mass = 0.0;
  for (size_t k = 0; k < product.size(); ++k) mass += prior[int(k)] * product[k];
  if (mass <= 0.0) {
    b.degenerate = true;
    return b;
  }
  for (int k = 0; k < b.posterior.size(); ++k) b.posterior[k] = prior[k] * product[k] / mass;
  return b;
}

inline std::array<double, 2> oracle_plan_values(const Game& g, const PolicySet& types,
                                                const Distribution& w, const History& h,
                                                int depth);

inline double oracle_q(const Game& g, const PolicySet& types, const Distribution& w,
                       const History& h, int depth, int ai, int aj) {
  const Player agent = other(types.seat);
  const double u = g.own_payoff(agent, ai, aj);
  if (depth == 1) return u;
  History next = h;
  next.push_back(agent == Player::row ? JointAction{ai, aj} : JointAction{aj, ai});
  const auto e = oracle_plan_values(g, types, w, next, depth - 1);
  return u + std::max(e[0], e[1]);
}

// Undivided h-round sums of the best-response planning recursion.
inline std::array<double, 2> oracle_plan_values(const Game& g, const PolicySet& types,
                                                const Distribution& w, const History& h,
                                                int depth) {
  std::array<double, 2> e{0.0, 0.0};
  for (int ai = 0; ai < 2; ++ai) {
    for (size_t k = 0; k < types.policies.size(); ++k) {
      const Distribution d = types.policies[k]->action_distribution(h, types.seat);
      for (int aj = 0; aj < 2; ++aj) {
        e[ai] += w[int(k)] * d[aj] * oracle_q(g, types, w, h, depth, ai, aj);
      }
    }
  }
  return e;
}

// Undivided expected h-round payoff of following `expert`, as a plain
// expectation over full joint trajectories.
inline double oracle_follow_value(const Game& g, const PolicySet& types, const Distribution& w,
                                  const BehaviorPolicy& expert, const History& h, int depth) {
  if (depth == 0) return 0.0;
  const Player agent = other(types.seat);
  const Distribution mine = expert.action_distribution(h, agent);
  double total = 0.0;
  for (int ai = 0; ai < 2; ++ai) {
    for (int aj = 0; aj < 2; ++aj) {
      double opp = 0.0;
      for (size_t k = 0; k < types.policies.size(); ++k) {
        opp += w[int(k)] * types.policies[k]->action_probability(h, types.seat, aj);
      }
      const double p = mine[ai] * opp;
      if (p == 0.0) continue;
      History next = h;
      next.push_back(agent == Player::row ? JointAction{ai, aj} : JointAction{aj, ai});
      total += p * (g.own_payoff(agent, ai, aj) +
                    oracle_follow_value(g, types, w, expert, next, depth - 1));
    }
  }
  return total;
}

// Deterministic but history-sensitive stochastic policy; action
// probabilities stay inside [0.05, 0.95] so nothing ever degenerates.
class HashPolicy : public BehaviorPolicy {
 public:
  explicit HashPolicy(std::uint64_t salt) : salt_(salt) {}

  Distribution action_distribution(const History& h, Player seat) const override {
    std::uint64_t x = salt_ ^ (seat == Player::col ? 0x632be59bd9b4e019ull : 0x9e3779b97f4a7c15ull);
    for (const JointAction& step : h) {
      x = splitmix64(x ^ static_cast<std::uint64_t>(step.row * 2 + step.col + 1));
    }
    const double u = static_cast<double>(splitmix64(x) >> 11) * 0x1.0p-53;
    const double p = 0.05 + 0.9 * u;
    return Distribution{p, 1.0 - p};
  }

  std::string descriptor() const override { return "hash:" + std::to_string(salt_); }

 private:
  std::uint64_t salt_;
};

}  // namespace ehba::testutil
