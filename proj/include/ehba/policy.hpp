#pragma once

#include <array>
#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

#include "ehba/game.hpp"
#include "ehba/rng.hpp"

namespace ehba {

// A small probability vector with inline storage. Action distributions
// have two entries and expert distributions at most a handful, so this
// never allocates.
class Distribution {
 public:
  static constexpr int kCapacity = 8;

  Distribution() = default;
  Distribution(std::initializer_list<double> ps);

  static Distribution uniform(int n);
  static Distribution delta(int n, int k);

  int size() const { return n_; }
  double operator[](int k) const { return p_[k]; }
  double& operator[](int k) { return p_[k]; }
  void push_back(double p);

  double sum() const;
  // Scales entries to sum to one; throws PolicyError when the mass is not
  // positive.
  void normalize();
  // Throws PolicyError unless entries are non-negative and sum to one,
  // both within 1e-9.
  void validate() const;

  // Inverse-CDF draw. Never returns an index with zero probability.
  int sample(RngStream& rng) const;

 private:
  std::array<double, kCapacity> p_{};
  int n_ = 0;
};

// A (behavioural) policy: a distribution over the next action given the
// joint history, from the perspective of the seat it occupies.
class BehaviorPolicy {
 public:
  virtual ~BehaviorPolicy() = default;

  virtual Distribution action_distribution(const History& h, Player seat) const = 0;

  // Stable structural identifier; two policies with equal descriptors
  // behave identically. Used for uniqueness checks and seed derivation.
  virtual std::string descriptor() const = 0;

  double action_probability(const History& h, Player seat, int action) const {
    return action_distribution(h, seat)[action];
  }
};

using PolicyPtr = std::shared_ptr<const BehaviorPolicy>;

// A named collection of policies for one seat, e.g. the hypothesis set
// produced by a generator for a particular game.
struct PolicySet {
  std::vector<PolicyPtr> policies;
  Player seat = Player::col;
  std::string generator;
  std::string game_label;
};

int sample_action(const BehaviorPolicy& policy, const History& h, Player seat, RngStream& rng);

// ---- Elementary policies -------------------------------------------------

class ConstantPolicy : public BehaviorPolicy {
 public:
  explicit ConstantPolicy(int action) : action_(action) {}
  Distribution action_distribution(const History&, Player) const override;
  std::string descriptor() const override;

 private:
  int action_;
};

class UniformPolicy : public BehaviorPolicy {
 public:
  Distribution action_distribution(const History&, Player) const override;
  std::string descriptor() const override;
};

// Always plays the same fixed mixture, regardless of history.
class StaticMixPolicy : public BehaviorPolicy {
 public:
  explicit StaticMixPolicy(Distribution d);
  Distribution action_distribution(const History&, Player) const override;
  std::string descriptor() const override;

 private:
  Distribution d_;
};

// Plays action 0 ("cooperate") exactly when at least `window` rounds have
// been played and the opponent chose action 0 in every one of the last
// `window` rounds; otherwise plays action 1. In particular it opens with
// action 1 until the window fills.
class GrimPolicy : public BehaviorPolicy {
 public:
  explicit GrimPolicy(int window);
  Distribution action_distribution(const History& h, Player seat) const override;
  std::string descriptor() const override;

 private:
  int window_;
};

}  // namespace ehba
