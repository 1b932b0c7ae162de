#include "ehba/generators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numeric>
#include <set>
#include <utility>

#include "ehba/errors.hpp"

namespace ehba {

namespace {

int component(const JointAction& a, Player seat) {
  return seat == Player::row ? a.row : a.col;
}

Distribution to_distribution(const MixedStrategy& m) {
  return Distribution{m.probs[0], m.probs[1]};
}

}  // namespace

// ---- Leader / follower / trigger agents -----------------------------------

TargetSolution random_target_solution(RngStream& rng) {
  TargetSolution t;
  int length = 1 + rng.next_below(3);
  t.steps.reserve(length);
  for (int k = 0; k < length; ++k) {
    t.steps.push_back(JointAction{rng.next_below(2), rng.next_below(2)});
  }
  return t;
}

std::string lft_variant_name(LftVariant v) {
  switch (v) {
    case LftVariant::leader: return "leader";
    case LftVariant::follower: return "follower";
    case LftVariant::trigger: return "trigger";
  }
  throw ConfigError("lft: unknown variant");
}

LftVariant parse_lft_variant(const std::string& name) {
  if (name == "leader") return LftVariant::leader;
  if (name == "follower") return LftVariant::follower;
  if (name == "trigger") return LftVariant::trigger;
  throw ConfigError("lft: unknown variant '" + name + "'");
}

LftPolicy::LftPolicy(const Game& g, LftVariant variant, TargetSolution target, int punish_len)
    : variant_(variant), target_(std::move(target)), punish_len_(punish_len) {
  if (target_.steps.empty()) {
    throw ConfigError("lft: target solution must be non-empty");
  }
  for (const JointAction& a : target_.steps) {
    if (a.row < 0 || a.row > 1 || a.col < 0 || a.col > 1) {
      throw ConfigError("lft: target solution contains an invalid action");
    }
  }
  if (punish_len_ < 1) {
    throw ConfigError("lft: punishment length must be positive");
  }
  for (Player seat : {Player::row, Player::col}) {
    int s = static_cast<int>(seat);
    punish_[s] = minimax_punishment(g, seat).strategy;
    maximin_[s] = maximin_strategy(g, seat).strategy;
  }

  descriptor_ = "lft:" + lft_variant_name(variant_) + ":";
  for (std::size_t k = 0; k < target_.steps.size(); ++k) {
    if (k > 0) descriptor_ += '.';
    descriptor_ += static_cast<char>('0' + target_.steps[k].row);
    descriptor_ += static_cast<char>('0' + target_.steps[k].col);
  }
  if (variant_ == LftVariant::leader) {
    descriptor_ += ":p" + std::to_string(punish_len_);
  }
  salt_ = fnv1a64(descriptor_);
}

LftPolicy::Phase LftPolicy::replay(const History& h, Player seat) const {
  Phase ph;
  const Player opp_seat = other(seat);
  const int length = target_.length();
  for (std::size_t round = 0; round < h.size(); ++round) {
    if (ph.triggered) break;  // maximin forever, nothing left to track
    if (ph.punish_left > 0) {
      --ph.punish_left;  // punishment rounds are not judged
      continue;
    }
    const JointAction& prescribed = target_.at(ph.pos);
    const bool opp_deviated = component(h[round], opp_seat) != component(prescribed, opp_seat);
    const bool own_deviated = component(h[round], seat) != component(prescribed, seat);
    switch (variant_) {
      case LftVariant::leader:
        if (opp_deviated) {
          ph.punish_left = punish_len_;  // position stays frozen during punishment
        } else {
          ph.pos = (ph.pos + 1) % length;
        }
        break;
      case LftVariant::trigger:
        if (opp_deviated) {
          ph.triggered = true;
        } else {
          ph.pos = (ph.pos + 1) % length;
        }
        break;
      case LftVariant::follower:
        if (opp_deviated || own_deviated) {
          // Pure function of history: the reset position comes from a hash
          // of (policy, round, joint action) rather than shared rng state.
          std::uint64_t x = splitmix64(salt_ ^ static_cast<std::uint64_t>(round + 1));
          x = splitmix64(x ^ static_cast<std::uint64_t>(h[round].row * 2 + h[round].col + 1));
          ph.pos = static_cast<int>(x % static_cast<std::uint64_t>(length));
        } else {
          ph.pos = (ph.pos + 1) % length;
        }
        break;
    }
  }
  return ph;
}

Distribution LftPolicy::action_distribution(const History& h, Player seat) const {
  Phase ph = replay(h, seat);
  int s = static_cast<int>(seat);
  if (ph.triggered) return to_distribution(maximin_[s]);
  if (ph.punish_left > 0) return to_distribution(punish_[s]);
  return Distribution::delta(2, component(target_.at(ph.pos), seat));
}

std::string LftPolicy::descriptor() const { return descriptor_; }

PolicySet generate_lft_set(const Game& g, int count, Player seat, RngStream& rng) {
  if (count < 1) throw ConfigError("lft: set size must be positive");
  PolicySet out;
  out.seat = seat;
  out.generator = "lft";
  out.game_label = g.label();
  std::set<std::string> seen;
  int budget = 64 * count + 256;
  while (static_cast<int>(out.policies.size()) < count && budget-- > 0) {
    auto variant = static_cast<LftVariant>(rng.next_below(3));
    auto policy = std::make_shared<const LftPolicy>(g, variant, random_target_solution(rng));
    if (seen.insert(policy->descriptor()).second) {
      out.policies.push_back(std::move(policy));
    }
  }
  if (static_cast<int>(out.policies.size()) < count) {
    throw GenerationError("lft: could not draw " + std::to_string(count) +
                          " unique policies within the retry budget");
  }
  return out;
}

// ---- Co-evolved decision trees ---------------------------------------------

namespace {

constexpr double kLeafProbability = 0.3;

int free_slots(std::uint8_t used_mask, std::array<int, kTreeMemory>& out) {
  int n = 0;
  for (int s = 0; s < kTreeMemory; ++s) {
    if (!(used_mask & (1u << s))) out[n++] = s;
  }
  return n;
}

TreePtr grow_tree(RngStream& rng, std::uint8_t used_mask) {
  std::array<int, kTreeMemory> open{};
  int n = free_slots(used_mask, open);
  auto node = std::make_unique<TreeNode>();
  if (n == 0 || rng.next_unit() < kLeafProbability) {
    node->slot = -1;
    node->action = rng.next_below(2);
    return node;
  }
  node->slot = open[rng.next_below(n)];
  std::uint8_t mask = used_mask | static_cast<std::uint8_t>(1u << node->slot);
  node->zero = grow_tree(rng, mask);
  node->one = grow_tree(rng, mask);
  return node;
}

int count_nodes(const TreeNode& t) {
  return t.is_leaf() ? 1 : 1 + count_nodes(*t.zero) + count_nodes(*t.one);
}

// Preorder lookup; `k` counts down and goes negative once found.
const TreeNode* nth_node(const TreeNode& t, int& k) {
  if (k == 0) {
    k = -1;
    return &t;
  }
  --k;
  if (t.is_leaf()) return nullptr;
  if (const TreeNode* hit = nth_node(*t.zero, k)) return hit;
  if (k < 0) return nullptr;
  return nth_node(*t.one, k);
}

void replace_nth(TreePtr& t, int& k, const TreeNode& replacement) {
  if (k == 0) {
    t = clone_tree(replacement);
    k = -1;
    return;
  }
  --k;
  if (t->is_leaf()) return;
  replace_nth(t->zero, k, replacement);
  if (k < 0) return;
  replace_nth(t->one, k, replacement);
}

// Restores the distinct-slots-per-path invariant after crossover or
// mutation: an internal node whose slot is already taken on its path gets a
// free slot, or collapses to a leaf when none is left.
void repair_tree(TreeNode& t, std::uint8_t used_mask, RngStream& rng) {
  if (t.is_leaf()) return;
  if (used_mask & (1u << t.slot)) {
    std::array<int, kTreeMemory> open{};
    int n = free_slots(used_mask, open);
    if (n == 0) {
      t.slot = -1;
      t.action = rng.next_below(2);
      t.zero.reset();
      t.one.reset();
      return;
    }
    t.slot = open[rng.next_below(n)];
  }
  std::uint8_t mask = used_mask | static_cast<std::uint8_t>(1u << t.slot);
  repair_tree(*t.zero, mask, rng);
  repair_tree(*t.one, mask, rng);
}

void mutate_walk(TreeNode& t, double rate, std::uint8_t used_mask, RngStream& rng) {
  if (rng.next_unit() < rate) {
    if (t.is_leaf()) {
      t.action = 1 - t.action;
    } else {
      std::array<int, kTreeMemory> open{};
      int n = free_slots(used_mask, open);
      t.slot = open[rng.next_below(n)];  // own slot is free w.r.t. the path above
    }
  }
  if (!t.is_leaf()) {
    std::uint8_t mask = used_mask | static_cast<std::uint8_t>(1u << t.slot);
    mutate_walk(*t.zero, rate, mask, rng);
    mutate_walk(*t.one, rate, mask, rng);
  }
}

void describe_tree(const TreeNode& t, std::string& out) {
  if (t.is_leaf()) {
    out += 'a';
    out += static_cast<char>('0' + t.action);
    return;
  }
  out += '(';
  out += static_cast<char>('0' + t.slot);
  out += '?';
  describe_tree(*t.zero, out);
  out += ':';
  describe_tree(*t.one, out);
  out += ')';
}

}  // namespace

TreePtr clone_tree(const TreeNode& t) {
  auto copy = std::make_unique<TreeNode>();
  copy->slot = t.slot;
  copy->action = t.action;
  if (!t.is_leaf()) {
    copy->zero = clone_tree(*t.zero);
    copy->one = clone_tree(*t.one);
  }
  return copy;
}

TreePtr random_tree(RngStream& rng) { return grow_tree(rng, 0); }

TreePtr tree_crossover(const TreeNode& a, const TreeNode& b, RngStream& rng) {
  TreePtr child = clone_tree(a);
  int at = rng.next_below(count_nodes(*child));
  int from = rng.next_below(count_nodes(b));
  const TreeNode* graft = nth_node(b, from);
  replace_nth(child, at, *graft);
  repair_tree(*child, 0, rng);
  return child;
}

void tree_mutate(TreeNode& t, double rate, RngStream& rng) {
  if (rate <= 0.0) return;
  mutate_walk(t, rate, 0, rng);
  // A re-drawn slot may collide with one used deeper down the tree.
  repair_tree(t, 0, rng);
}

int tree_output(const TreeNode& t, const std::array<int, kTreeMemory>& opp_last) {
  const TreeNode* cur = &t;
  while (!cur->is_leaf()) {
    cur = opp_last[cur->slot] == 0 ? cur->zero.get() : cur->one.get();
  }
  return cur->action;
}

int tree_evaluate(const TreeNode& t, const History& h, Player seat) {
  const Player opp_seat = other(seat);
  std::array<int, kTreeMemory> pattern{};
  for (int s = 0; s < kTreeMemory; ++s) {
    pattern[s] = s < static_cast<int>(h.size()) ? component(h[h.size() - 1 - s], opp_seat) : 0;
  }
  return tree_output(t, pattern);
}

double tree_dissimilarity(const TreeNode& a, const TreeNode& b) {
  int differ = 0;
  for (int m = 0; m < (1 << kTreeMemory); ++m) {
    std::array<int, kTreeMemory> pattern{};
    for (int s = 0; s < kTreeMemory; ++s) pattern[s] = (m >> s) & 1;
    differ += tree_output(a, pattern) != tree_output(b, pattern) ? 1 : 0;
  }
  return static_cast<double>(differ) / (1 << kTreeMemory);
}

TreePolicy::TreePolicy(TreePtr root) : root_(std::move(root)) {
  if (!root_) throw ConfigError("decision tree: missing root");
  descriptor_ = "dt:";
  describe_tree(*root_, descriptor_);
}

Distribution TreePolicy::action_distribution(const History& h, Player seat) const {
  return Distribution::delta(2, tree_evaluate(*root_, h, seat));
}

std::string TreePolicy::descriptor() const { return descriptor_; }

// ---- Co-evolved neural networks ---------------------------------------------

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// One of the 4^3 probe histories used for behavioural dissimilarity.
History probe_history(int code) {
  History h;
  h.reserve(3);
  for (int round = 0; round < 3; ++round) {
    int cell = (code >> (2 * round)) & 3;
    h.push_back(JointAction{cell & 1, cell >> 1});
  }
  return h;
}

}  // namespace

NetGenome random_net_genome(RngStream& rng) {
  NetGenome g;
  g.w.resize(kNetWeights);
  for (double& w : g.w) w = 2.0 * rng.next_unit() - 1.0;
  return g;
}

NetGenome net_crossover(const NetGenome& a, const NetGenome& b, RngStream& rng) {
  if (a.w.size() != b.w.size()) throw ConfigError("net crossover: genome sizes differ");
  NetGenome child;
  child.w.resize(a.w.size());
  for (std::size_t k = 0; k < a.w.size(); ++k) {
    child.w[k] = rng.next_unit() < 0.5 ? a.w[k] : b.w[k];
  }
  return child;
}

void net_mutate(NetGenome& g, double rate, double sigma, RngStream& rng) {
  if (rate <= 0.0) return;
  for (double& w : g.w) {
    if (rng.next_unit() < rate) w += sigma * rng.next_gaussian();
  }
}

double net_output(const NetGenome& g, const std::array<double, kNetInputs>& in) {
  const std::vector<double>& w = g.w;
  std::array<double, kNetHidden> hidden{};
  for (int j = 0; j < kNetHidden; ++j) {
    double z = w[kNetHidden * kNetInputs + j];
    for (int i = 0; i < kNetInputs; ++i) z += w[j * kNetInputs + i] * in[i];
    hidden[j] = sigmoid(z);
  }
  double z = w[kNetWeights - 1];
  for (int j = 0; j < kNetHidden; ++j) {
    z += w[kNetHidden * kNetInputs + kNetHidden + j] * hidden[j];
  }
  return sigmoid(z);
}

std::array<double, kNetInputs> net_inputs(const History& h, Player seat) {
  const Player opp_seat = other(seat);
  const auto rounds = static_cast<int>(h.size());
  std::array<double, kNetInputs> in{};
  if (rounds >= 1) {
    in[0] = component(h[rounds - 1], seat);
    in[1] = component(h[rounds - 1], opp_seat);
  }
  if (rounds >= 2) {
    in[2] = component(h[rounds - 2], seat);
    in[3] = component(h[rounds - 2], opp_seat);
  }
  return in;
}

double net_dissimilarity(const NetGenome& a, const NetGenome& b) {
  double total = 0.0;
  for (int code = 0; code < 64; ++code) {
    History h = probe_history(code);
    auto in = net_inputs(h, Player::row);
    total += std::abs(net_output(a, in) - net_output(b, in));
  }
  return total / 64.0;
}

NeuralNetPolicy::NeuralNetPolicy(NetGenome genome) : genome_(std::move(genome)) {
  if (static_cast<int>(genome_.w.size()) != kNetWeights) {
    throw ConfigError("neural net: expected " + std::to_string(kNetWeights) + " weights, got " +
                      std::to_string(genome_.w.size()));
  }
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (double x : genome_.w) {
    if (!std::isfinite(x)) throw ConfigError("neural net: weights must be finite");
    std::uint64_t bits = 0;
    std::memcpy(&bits, &x, sizeof bits);
    hash = splitmix64(hash ^ bits);
  }
  char buf[24];
  std::snprintf(buf, sizeof buf, "nn:%016llx", static_cast<unsigned long long>(hash));
  descriptor_ = buf;
}

Distribution NeuralNetPolicy::action_distribution(const History& h, Player seat) const {
  double p0 = net_output(genome_, net_inputs(h, seat));
  return Distribution{p0, 1.0 - p0};
}

std::string NeuralNetPolicy::descriptor() const { return descriptor_; }

// ---- Co-evolution ------------------------------------------------------------

namespace {

struct TreeSpecies {
  using Genome = TreePtr;
  using Signature = std::uint8_t;  // output bit per opponent pattern

  static constexpr const char* family = "cdt";

  static Genome random(RngStream& rng) { return random_tree(rng); }
  static Genome clone(const Genome& g) { return clone_tree(*g); }
  static Genome crossover(const Genome& a, const Genome& b, RngStream& rng) {
    return tree_crossover(*a, *b, rng);
  }
  static void mutate(Genome& g, const EvolutionParams& p, RngStream& rng) {
    tree_mutate(*g, p.mutation_rate, rng);
  }
  static Signature signature(const Genome& g) {
    std::uint8_t bits = 0;
    for (int m = 0; m < (1 << kTreeMemory); ++m) {
      std::array<int, kTreeMemory> pattern{};
      for (int s = 0; s < kTreeMemory; ++s) pattern[s] = (m >> s) & 1;
      bits |= static_cast<std::uint8_t>(tree_output(*g, pattern) << m);
    }
    return bits;
  }
  static double dissimilarity(Signature a, Signature b) {
    int differ = 0;
    for (int m = 0; m < (1 << kTreeMemory); ++m) differ += ((a ^ b) >> m) & 1;
    return static_cast<double>(differ) / (1 << kTreeMemory);
  }
  static int act(const Genome& g, const History& h, Player seat, RngStream&) {
    return tree_evaluate(*g, h, seat);
  }
  static PolicyPtr make_policy(const Genome& g) {
    return std::make_shared<const TreePolicy>(clone_tree(*g));
  }
};

struct NetSpecies {
  using Genome = NetGenome;
  using Signature = std::array<double, 64>;  // output per probe history

  static constexpr const char* family = "cnn";

  static Genome random(RngStream& rng) { return random_net_genome(rng); }
  static Genome clone(const Genome& g) { return g; }
  static Genome crossover(const Genome& a, const Genome& b, RngStream& rng) {
    return net_crossover(a, b, rng);
  }
  static void mutate(Genome& g, const EvolutionParams& p, RngStream& rng) {
    net_mutate(g, p.mutation_rate, p.mutation_sigma, rng);
  }
  static Signature signature(const Genome& g) {
    Signature out{};
    for (int code = 0; code < 64; ++code) {
      out[code] = net_output(g, net_inputs(probe_history(code), Player::row));
    }
    return out;
  }
  static double dissimilarity(const Signature& a, const Signature& b) {
    double total = 0.0;
    for (int code = 0; code < 64; ++code) total += std::abs(a[code] - b[code]);
    return total / 64.0;
  }
  static int act(const Genome& g, const History& h, Player seat, RngStream& rng) {
    double p0 = net_output(g, net_inputs(h, seat));
    return rng.next_unit() < p0 ? 0 : 1;
  }
  static PolicyPtr make_policy(const Genome& g) {
    return std::make_shared<const NeuralNetPolicy>(g);
  }
};

template <typename S>
class Coevolution {
 public:
  Coevolution(const Game& g, const EvolutionParams& p, RngStream& rng)
      : game_(g), params_(p), rng_(rng) {}

  std::pair<PolicySet, PolicySet> run() {
    for (int k = 0; k < params_.pool_size; ++k) pool_i_.push_back(S::random(rng_));
    for (int k = 0; k < params_.pool_size; ++k) pool_j_.push_back(S::random(rng_));
    fit_i_.assign(params_.pool_size, 0.0);
    fit_j_.assign(params_.pool_size, 0.0);
    for (int gen = 0; gen < params_.generations; ++gen) {
      evaluate();
      breed(pool_i_, fit_i_);
      breed(pool_j_, fit_j_);
    }
    evaluate();  // rank the final pools
    return {rank(pool_i_, fit_i_, Player::row), rank(pool_j_, fit_j_, Player::col)};
  }

 private:
  using Pool = std::vector<typename S::Genome>;

  void evaluate() {
    diversify(pool_i_, fit_i_);
    diversify(pool_j_, fit_j_);
    for (int k = 0; k < params_.pool_size; ++k) {
      const auto& opp = pool_j_[rng_.next_below(params_.pool_size)];
      fit_i_[k] += play(pool_i_[k], opp, Player::row);
    }
    for (int k = 0; k < params_.pool_size; ++k) {
      const auto& opp = pool_i_[rng_.next_below(params_.pool_size)];
      fit_j_[k] += play(opp, pool_j_[k], Player::col);
    }
  }

  // Seeds each fitness with the diversity bonus; play payoffs are added on top.
  void diversify(const Pool& pool, std::vector<double>& fit) {
    std::vector<typename S::Signature> sigs;
    sigs.reserve(pool.size());
    for (const auto& g : pool) sigs.push_back(S::signature(g));
    for (std::size_t a = 0; a < pool.size(); ++a) {
      double total = 0.0;
      for (std::size_t b = 0; b < pool.size(); ++b) {
        if (a != b) total += S::dissimilarity(sigs[a], sigs[b]);
      }
      double mean = pool.size() > 1 ? total / (pool.size() - 1) : 0.0;
      fit[a] = params_.diversity_weight * mean;
    }
  }

  // Mean per-round payoff to `scored` over one evaluation play.
  double play(const typename S::Genome& row, const typename S::Genome& col, Player scored) {
    History h;
    h.reserve(params_.eval_rounds);
    double total = 0.0;
    for (int round = 0; round < params_.eval_rounds; ++round) {
      JointAction a{S::act(row, h, Player::row, rng_), S::act(col, h, Player::col, rng_)};
      total += game_.payoff(scored, a);
      h.push_back(a);
    }
    return total / params_.eval_rounds;
  }

  int tournament(const std::vector<double>& fit) {
    int best = rng_.next_below(params_.pool_size);
    for (int r = 1; r < params_.tournament; ++r) {
      int c = rng_.next_below(params_.pool_size);
      if (fit[c] > fit[best]) best = c;
    }
    return best;
  }

  void breed(Pool& pool, const std::vector<double>& fit) {
    std::vector<int> order(pool.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return fit[a] > fit[b]; });
    Pool next;
    next.reserve(pool.size());
    for (int e = 0; e < params_.elite && e < static_cast<int>(pool.size()); ++e) {
      next.push_back(S::clone(pool[order[e]]));
    }
    while (next.size() < pool.size()) {
      int pa = tournament(fit);
      typename S::Genome child =
          params_.crossover_rate > 0.0 && rng_.next_unit() < params_.crossover_rate
              ? S::crossover(pool[pa], pool[tournament(fit)], rng_)
              : S::clone(pool[pa]);
      S::mutate(child, params_, rng_);
      next.push_back(std::move(child));
    }
    pool = std::move(next);
  }

  // Whole pool as policies, fittest first. Within a fitness tie,
  // structurally distinct individuals come before repeats, so a prefix of
  // the ranking is the best set of a given size and a degenerate pool
  // still yields one (with duplicates).
  PolicySet rank(const Pool& pool, const std::vector<double>& fit, Player seat) {
    std::vector<int> order(pool.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return fit[a] > fit[b]; });
    PolicySet out;
    out.seat = seat;
    out.generator = S::family;
    out.game_label = game_.label();
    std::set<std::string> seen;
    std::size_t group_start = 0;
    while (group_start < order.size()) {
      std::size_t group_end = group_start;
      while (group_end < order.size() && fit[order[group_end]] == fit[order[group_start]]) {
        ++group_end;
      }
      std::vector<PolicyPtr> repeats;
      for (std::size_t k = group_start; k < group_end; ++k) {
        PolicyPtr p = S::make_policy(pool[order[k]]);
        if (seen.insert(p->descriptor()).second) {
          out.policies.push_back(std::move(p));
        } else {
          repeats.push_back(std::move(p));
        }
      }
      for (auto& p : repeats) out.policies.push_back(std::move(p));
      group_start = group_end;
    }
    return out;
  }

  const Game& game_;
  const EvolutionParams& params_;
  RngStream& rng_;
  Pool pool_i_, pool_j_;
  std::vector<double> fit_i_, fit_j_;
};

void check_evolution_params(const EvolutionParams& p) {
  if (p.pool_size < 2) throw ConfigError("coevolve: pool size must be at least 2");
  if (p.generations < 1) throw ConfigError("coevolve: need at least one generation");
  if (p.tournament < 1 || p.eval_rounds < 1 || p.elite < 0) {
    throw ConfigError("coevolve: invalid evolution parameters");
  }
}

template <typename S>
std::pair<PolicySet, PolicySet> coevolve(const Game& g, int count, const EvolutionParams& p,
                                         RngStream& rng) {
  if (count < 1) throw ConfigError("coevolve: set size must be positive");
  if (p.pool_size < 2 * count) {
    throw ConfigError("coevolve: pool size must be at least twice the set size");
  }
  check_evolution_params(p);
  auto pools = Coevolution<S>(g, p, rng).run();
  pools.first.policies.resize(count);
  pools.second.policies.resize(count);
  return pools;
}

}  // namespace

std::pair<PolicySet, PolicySet> coevolve_decision_trees(const Game& g, int count,
                                                        const EvolutionParams& params,
                                                        RngStream& rng) {
  return coevolve<TreeSpecies>(g, count, params, rng);
}

std::pair<PolicySet, PolicySet> coevolve_neural_nets(const Game& g, int count,
                                                     const EvolutionParams& params,
                                                     RngStream& rng) {
  return coevolve<NetSpecies>(g, count, params, rng);
}

std::pair<PolicySet, PolicySet> ranked_decision_tree_pools(const Game& g,
                                                           const EvolutionParams& params,
                                                           RngStream& rng) {
  check_evolution_params(params);
  return Coevolution<TreeSpecies>(g, params, rng).run();
}

std::pair<PolicySet, PolicySet> ranked_neural_net_pools(const Game& g,
                                                        const EvolutionParams& params,
                                                        RngStream& rng) {
  check_evolution_params(params);
  return Coevolution<NetSpecies>(g, params, rng).run();
}

// ---- Fictitious play ----------------------------------------------------------

namespace {

class FictitiousPlayPolicy : public BehaviorPolicy {
 public:
  explicit FictitiousPlayPolicy(const Game& g) : game_(g) {}

  Distribution action_distribution(const History& h, Player seat) const override {
    if (h.empty()) return Distribution::uniform(2);
    double freq0 = 0.0;
    for (const JointAction& a : h) {
      if (component(a, other(seat)) == 0) freq0 += 1.0;
    }
    freq0 /= static_cast<double>(h.size());
    double v0 = freq0 * game_.own_payoff(seat, 0, 0) + (1.0 - freq0) * game_.own_payoff(seat, 0, 1);
    double v1 = freq0 * game_.own_payoff(seat, 1, 0) + (1.0 - freq0) * game_.own_payoff(seat, 1, 1);
    if (std::abs(v0 - v1) <= 1e-12) return Distribution::uniform(2);
    return Distribution::delta(2, v0 > v1 ? 0 : 1);
  }

  std::string descriptor() const override { return "fp"; }

 private:
  Game game_;
};

}  // namespace

PolicyPtr fictitious_play_policy(const Game& g) {
  return std::make_shared<const FictitiousPlayPolicy>(g);
}

// ---- Experiment type sets -------------------------------------------------------

std::string generator_name(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::lft: return "lft";
    case GeneratorKind::cdt: return "cdt";
    case GeneratorKind::cnn: return "cnn";
  }
  throw ConfigError("generator: unknown kind");
}

GeneratorKind parse_generator(const std::string& name) {
  if (name == "lft") return GeneratorKind::lft;
  if (name == "cdt") return GeneratorKind::cdt;
  if (name == "cnn") return GeneratorKind::cnn;
  throw ConfigError("generator: unknown kind '" + name + "'");
}

namespace {

constexpr int kSetSize = 5;  // experts for player i, hypothesised types for player j

// First `count` distinct-descriptor policies in ranked order.
PolicySet distinct_front(const PolicySet& set, int count, const char* what) {
  PolicySet out = set;
  out.policies.clear();
  std::set<std::string> seen;
  for (const PolicyPtr& p : set.policies) {
    if (static_cast<int>(out.policies.size()) >= count) break;
    if (seen.insert(p->descriptor()).second) out.policies.push_back(p);
  }
  if (static_cast<int>(out.policies.size()) < count) {
    throw GenerationError(std::string("type sets: could not draw enough unique ") + what);
  }
  return out;
}

PolicySet take_front(const PolicySet& set, int count) {
  PolicySet out = set;
  out.policies.assign(set.policies.begin(), set.policies.begin() + count);
  return out;
}

}  // namespace

TypeSetSample sample_type_sets(GeneratorKind kind, const Game& g, RngStream& rng,
                               bool include_true, const EvolutionParams& params) {
  const int want = include_true ? kSetSize : kSetSize + 1;
  TypeSetSample out;
  PolicySet drawn_types;
  if (kind == GeneratorKind::lft) {
    out.experts = generate_lft_set(g, kSetSize, Player::row, rng);
    drawn_types = generate_lft_set(g, want, Player::col, rng);
  } else {
    if (params.pool_size < 2 * want) {
      throw ConfigError("type sets: pool size must be at least twice the set size");
    }
    // Scan the full fitness ranking so duplicate individuals (common when
    // fitness ties are wide) don't crowd out distinct candidates.
    auto pools = kind == GeneratorKind::cdt ? ranked_decision_tree_pools(g, params, rng)
                                            : ranked_neural_net_pools(g, params, rng);
    out.experts = distinct_front(pools.first, kSetSize, "experts");
    drawn_types = distinct_front(pools.second, want, "types");
  }
  out.types = take_front(drawn_types, kSetSize);
  if (include_true) {
    out.true_type = out.types.policies[rng.next_below(kSetSize)];
  } else {
    out.true_type = drawn_types.policies[kSetSize];
    for (const PolicyPtr& p : out.types.policies) {
      if (p->descriptor() == out.true_type->descriptor()) {
        throw GenerationError("type sets: excluded true type collides with a hypothesised type");
      }
    }
  }
  return out;
}

}  // namespace ehba
