#include "ehba/experts.hpp"

#include <algorithm>
#include <cmath>

#include "ehba/errors.hpp"

namespace ehba {
namespace {

int argmax(const std::vector<double>& v) {
  int best = 0;
  for (int k = 1; k < static_cast<int>(v.size()); ++k) {
    if (v[k] > v[best]) best = k;
  }
  return best;
}

// exp(eta*payoffs), normalized. Subtracting the maximum first keeps the
// exponentials bounded without changing any weight ratio.
Distribution softmax(const std::vector<double>& payoffs, double eta) {
  double top = payoffs[0];
  for (double p : payoffs) top = std::max(top, p);
  Distribution d;
  double sum = 0.0;
  for (double p : payoffs) {
    const double w = std::exp(eta * (p - top));
    d.push_back(w);
    sum += w;
  }
  for (int k = 0; k < d.size(); ++k) d[k] /= sum;
  return d;
}

}  // namespace

ExpertAlgorithm::ExpertAlgorithm(int num_experts) : k_(num_experts) {
  if (num_experts < 1) throw ConfigError("expert algorithm: need at least one expert");
  if (num_experts > Distribution::kCapacity) {
    throw ConfigError("expert algorithm: too many experts for selection distributions");
  }
}

Distribution ExpertAlgorithm::select(const std::vector<double>& payoffs, RngStream& rng) {
  if (static_cast<int>(payoffs.size()) != k_) {
    throw ConfigError("select: payoff vector does not match expert count");
  }
  if (init_offset_ < 0) init_offset_ = rng.next_below(k_);
  const Distribution d = rounds_ < k_
                             ? Distribution::delta(k_, (init_offset_ + rounds_) % k_)
                             : select_impl(payoffs, rng);
  ++rounds_;
  return d;
}

void ExpertAlgorithm::update(int chosen, double realized,
                             const std::vector<double>* full_feedback) {
  if (chosen < 0 || chosen >= k_) throw ConfigError("update: expert index out of range");
  if (full_feedback && static_cast<int>(full_feedback->size()) != k_) {
    throw ConfigError("update: feedback vector does not match expert count");
  }
  update_impl(chosen, realized, full_feedback);
}

Ucb1::Ucb1(int num_experts) : ExpertAlgorithm(num_experts), counts_(num_experts, 0) {}

Distribution Ucb1::select_impl(const std::vector<double>& payoffs, RngStream&) {
  // If feedback has not kept up with selection, keep visiting the gaps.
  for (int k = 0; k < k_; ++k) {
    if (counts_[k] == 0) return Distribution::delta(k_, k);
  }
  int best = 0;
  double best_value = -1e300;
  for (int k = 0; k < k_; ++k) {
    const double bonus = std::sqrt(2.0 * std::log(static_cast<double>(total_)) / counts_[k]);
    const double value = payoffs[k] + bonus;
    if (value > best_value) {
      best_value = value;
      best = k;
    }
  }
  return Distribution::delta(k_, best);
}

void Ucb1::update_impl(int chosen, double, const std::vector<double>*) {
  counts_[chosen]++;
  total_++;
}

Eee::Eee(int num_experts, const EeeParams& params)
    : ExpertAlgorithm(num_experts), params_(params), exploit_visits_(num_experts, 0) {
  if (params.explore_len < 1 || params.schedule_window < 1) {
    throw ConfigError("eee: phase lengths must be positive");
  }
}

Distribution Eee::select_impl(const std::vector<double>& payoffs, RngStream& rng) {
  if (phase_left_ == 0) {
    // Explore with probability 1/ceil(t/window), i.e. always at first and
    // progressively more rarely as rounds accumulate.
    const int blocks = (rounds_ + params_.schedule_window - 1) / params_.schedule_window;
    const double p_explore = 1.0 / std::max(1, blocks);
    if (rng.next_unit() < p_explore) {
      current_ = rng.next_below(k_);
      phase_left_ = params_.explore_len;
    } else {
      current_ = argmax(payoffs);
      exploit_visits_[current_]++;
      // Exploitation phases lengthen each time an expert is re-chosen.
      phase_left_ = params_.explore_len * exploit_visits_[current_];
    }
  }
  --phase_left_;
  return Distribution::delta(k_, current_);
}

SAspiration::SAspiration(int num_experts, const SParams& params)
    : ExpertAlgorithm(num_experts), params_(params), aspiration_(params.initial_aspiration) {
  if (params.persistence < 0.0 || params.persistence >= 1.0) {
    throw ConfigError("s: persistence must lie in [0,1)");
  }
}

Distribution SAspiration::select_impl(const std::vector<double>& payoffs, RngStream&) {
  // Dissatisfaction = how far the current expert falls short of the
  // aspiration level; it becomes the probability of defecting to one of
  // the other experts, spread uniformly.
  const double q = std::clamp(aspiration_ - payoffs[current_], 0.0, 1.0);
  if (q <= 0.0 || k_ == 1) return Distribution::delta(k_, current_);
  Distribution d;
  for (int k = 0; k < k_; ++k) d.push_back(k == current_ ? 1.0 - q : q / (k_ - 1));
  return d;
}

void SAspiration::update_impl(int chosen, double realized, const std::vector<double>*) {
  current_ = chosen;
  aspiration_ = params_.persistence * aspiration_ + (1.0 - params_.persistence) * realized;
}

Hedge::Hedge(int num_experts, const HedgeParams& params)
    : ExpertAlgorithm(num_experts), params_(params) {
  if (params.eta <= 0.0) throw ConfigError("hedge: eta must be positive");
}

Distribution Hedge::select_impl(const std::vector<double>& payoffs, RngStream&) {
  return softmax(payoffs, params_.eta);
}

void Hedge::update_impl(int, double, const std::vector<double>* full_feedback) {
  if (!full_feedback) {
    throw ConfigError("hedge: full feedback is required every round");
  }
}

Exp3::Exp3(int num_experts, const Exp3Params& params)
    : ExpertAlgorithm(num_experts), params_(params) {
  if (params.eta <= 0.0 || params.gamma < 0.0 || params.gamma > 1.0) {
    throw ConfigError("exp3: need eta > 0 and gamma in [0,1]");
  }
}

Distribution Exp3::select_impl(const std::vector<double>& payoffs, RngStream&) {
  Distribution d = softmax(payoffs, params_.eta);
  for (int k = 0; k < d.size(); ++k) {
    d[k] = (1.0 - params_.gamma) * d[k] + params_.gamma / k_;
  }
  return d;
}

AlgorithmPtr make_expert_algorithm(const std::string& name, int num_experts,
                                   const AlgorithmParams& params) {
  if (name == "ucb1") return std::make_unique<Ucb1>(num_experts);
  if (name == "eee") return std::make_unique<Eee>(num_experts, params.eee);
  if (name == "s") return std::make_unique<SAspiration>(num_experts, params.s);
  if (name == "hedge") return std::make_unique<Hedge>(num_experts, params.hedge);
  if (name == "exp3") return std::make_unique<Exp3>(num_experts, params.exp3);
  throw ConfigError("unknown expert algorithm '" + name + "'");
}

const std::vector<std::string>& expert_algorithm_names() {
  static const std::vector<std::string> names{"ucb1", "eee", "s", "hedge", "exp3"};
  return names;
}

}  // namespace ehba
