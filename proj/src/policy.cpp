#include "ehba/policy.hpp"

#include <cmath>
#include <cstdio>

#include "ehba/errors.hpp"

namespace ehba {

Distribution::Distribution(std::initializer_list<double> ps) {
  for (double p : ps) push_back(p);
}

Distribution Distribution::uniform(int n) {
  Distribution d;
  for (int k = 0; k < n; ++k) d.push_back(1.0 / n);
  return d;
}

Distribution Distribution::delta(int n, int k) {
  Distribution d;
  for (int i = 0; i < n; ++i) d.push_back(i == k ? 1.0 : 0.0);
  return d;
}

void Distribution::push_back(double p) {
  if (n_ >= kCapacity) throw PolicyError("Distribution: capacity exceeded");
  p_[n_++] = p;
}

double Distribution::sum() const {
  double s = 0.0;
  for (int k = 0; k < n_; ++k) s += p_[k];
  return s;
}

void Distribution::normalize() {
  const double s = sum();
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw PolicyError("Distribution: cannot normalize non-positive mass");
  }
  for (int k = 0; k < n_; ++k) p_[k] /= s;
}

void Distribution::validate() const {
  if (n_ == 0) throw PolicyError("Distribution: empty");
  for (int k = 0; k < n_; ++k) {
    if (!(p_[k] >= -1e-9) || !std::isfinite(p_[k])) {
      throw PolicyError("Distribution: negative or non-finite entry");
    }
  }
  if (std::abs(sum() - 1.0) > 1e-9) {
    throw PolicyError("Distribution: mass does not sum to one");
  }
}

int Distribution::sample(RngStream& rng) const {
  const double u = rng.next_unit() * sum();
  double acc = 0.0;
  int last_positive = -1;
  for (int k = 0; k < n_; ++k) {
    if (p_[k] <= 0.0) continue;
    last_positive = k;
    acc += p_[k];
    if (u < acc) return k;
  }
  if (last_positive < 0) throw PolicyError("Distribution: sampling from zero mass");
  return last_positive;  // u landed on accumulated rounding slack
}

int sample_action(const BehaviorPolicy& policy, const History& h, Player seat, RngStream& rng) {
  Distribution d = policy.action_distribution(h, seat);
  d.validate();
  return d.sample(rng);
}

Distribution ConstantPolicy::action_distribution(const History&, Player) const {
  return Distribution::delta(2, action_);
}

std::string ConstantPolicy::descriptor() const { return "const:" + std::to_string(action_); }

Distribution UniformPolicy::action_distribution(const History&, Player) const {
  return Distribution::uniform(2);
}

std::string UniformPolicy::descriptor() const { return "uniform"; }

StaticMixPolicy::StaticMixPolicy(Distribution d) : d_(d) { d_.validate(); }

Distribution StaticMixPolicy::action_distribution(const History&, Player) const { return d_; }

std::string StaticMixPolicy::descriptor() const {
  char buf[48];
  std::snprintf(buf, sizeof buf, "mix:%.6f", d_[0]);
  return buf;
}

GrimPolicy::GrimPolicy(int window) : window_(window) {
  if (window < 1) throw ConfigError("GrimPolicy: window must be positive");
}

Distribution GrimPolicy::action_distribution(const History& h, Player seat) const {
  if (h.size() < static_cast<size_t>(window_)) return Distribution::delta(2, 1);
  for (size_t t = h.size() - window_; t < h.size(); ++t) {
    const int opp = seat == Player::col ? h[t].row : h[t].col;
    if (opp != 0) return Distribution::delta(2, 1);
  }
  return Distribution::delta(2, 0);
}

std::string GrimPolicy::descriptor() const { return "grim:" + std::to_string(window_); }

}  // namespace ehba
