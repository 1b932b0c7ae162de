#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ehba/game.hpp"
#include "ehba/policy.hpp"
#include "ehba/rng.hpp"

namespace ehba {

// ---- Leader / follower / trigger agents -----------------------------------

// A short cyclic sequence of joint actions the agent tries to coordinate on.
struct TargetSolution {
  std::vector<JointAction> steps;

  int length() const { return static_cast<int>(steps.size()); }
  const JointAction& at(int pos) const { return steps[pos % steps.size()]; }
};

// Uniform draw: length in {1,2,3}, each step a uniform joint action.
TargetSolution random_target_solution(RngStream& rng);

enum class LftVariant { leader, follower, trigger };

std::string lft_variant_name(LftVariant v);
LftVariant parse_lft_variant(const std::string& name);

// Plays its part of the target solution while play stays on it. On a
// deviation the three variants react differently:
//   leader   - opponent deviated: punish with the minimax strategy for
//              `punish_len` rounds, then resume at the frozen position;
//   trigger  - opponent deviated: play own maximin forever (absorbing);
//   follower - either player deviated: re-enter the target at a position
//              drawn uniformly from a hash of (descriptor, round, joint
//              action), so the policy stays a pure function of history.
class LftPolicy : public BehaviorPolicy {
 public:
  LftPolicy(const Game& g, LftVariant variant, TargetSolution target, int punish_len = 3);

  Distribution action_distribution(const History& h, Player seat) const override;
  std::string descriptor() const override;

  LftVariant variant() const { return variant_; }
  const TargetSolution& target() const { return target_; }
  int punish_len() const { return punish_len_; }

 private:
  struct Phase {
    bool triggered = false;  // trigger tripped; maximin forever
    int punish_left = 0;     // leader punishment rounds still owed
    int pos = 0;             // current position within the target
  };
  Phase replay(const History& h, Player seat) const;

  LftVariant variant_;
  TargetSolution target_;
  int punish_len_;
  std::array<MixedStrategy, 2> punish_;   // [seat] minimax punishment of the opponent
  std::array<MixedStrategy, 2> maximin_;  // [seat] own maximin strategy
  std::string descriptor_;
  std::uint64_t salt_;  // follower position-reset hashing
};

// `count` descriptor-unique LFT policies with uniformly drawn variants and
// target solutions. Throws GenerationError when the retry budget runs out.
PolicySet generate_lft_set(const Game& g, int count, Player seat, RngStream& rng);

// ---- Co-evolved decision trees ---------------------------------------------

// Binary decision tree over the opponent's last kTreeMemory actions.
// Internal nodes test one history slot (0 = most recent); along any
// root-to-leaf path the tested slots are distinct. Leaves hold a pure
// action. Slots beyond the available history read as action 0.
constexpr int kTreeMemory = 3;

struct TreeNode {
  int slot = -1;    // tested opponent-history slot; -1 marks a leaf
  int action = 0;   // leaf payload
  std::unique_ptr<TreeNode> zero;  // branch when the tested action was 0
  std::unique_ptr<TreeNode> one;   // branch when it was 1

  bool is_leaf() const { return slot < 0; }
};

using TreePtr = std::unique_ptr<TreeNode>;

TreePtr clone_tree(const TreeNode& t);
// Random grow: each node becomes a leaf with fixed probability, or always
// once the path has used every slot.
TreePtr random_tree(RngStream& rng);
// Swaps a uniformly chosen subtree of `a` for one of `b`, then repairs the
// child so path-distinctness holds (offending nodes get a free slot, or
// collapse to a leaf).
TreePtr tree_crossover(const TreeNode& a, const TreeNode& b, RngStream& rng);
// Point mutation: each node independently, with probability `rate`, flips
// its leaf action or re-draws its slot among those free on its path.
void tree_mutate(TreeNode& t, double rate, RngStream& rng);

// Output for an explicit pattern of the opponent's last actions
// (pattern[s] = action at slot s, 0 = most recent).
int tree_output(const TreeNode& t, const std::array<int, kTreeMemory>& opp_last);
// Same, with the pattern extracted from a history as seen from `seat`.
int tree_evaluate(const TreeNode& t, const History& h, Player seat);
// Fraction of the 2^kTreeMemory opponent patterns on which outputs differ.
double tree_dissimilarity(const TreeNode& a, const TreeNode& b);

class TreePolicy : public BehaviorPolicy {
 public:
  explicit TreePolicy(TreePtr root);

  Distribution action_distribution(const History& h, Player seat) const override;
  std::string descriptor() const override;

  const TreeNode& root() const { return *root_; }

 private:
  TreePtr root_;
  std::string descriptor_;
};

// ---- Co-evolved neural networks ---------------------------------------------

// Fully connected 4-5-1 network, sigmoid activations throughout. Inputs are
// (my action t-1, opponent action t-1, my action t-2, opponent action t-2),
// each in {0,1} and zero for rounds that have not happened yet. The output
// is the probability of playing action 0.
constexpr int kNetInputs = 4;
constexpr int kNetHidden = 5;
// Hidden weights + hidden biases + output weights + output bias.
constexpr int kNetWeights = kNetHidden * kNetInputs + kNetHidden + kNetHidden + 1;

struct NetGenome {
  std::vector<double> w;  // layout: hidden row-major, hidden bias, output, output bias
};

NetGenome random_net_genome(RngStream& rng);                      // genes uniform in [-1,1]
NetGenome net_crossover(const NetGenome& a, const NetGenome& b, RngStream& rng);
// Each gene independently, with probability `rate`, gets Gaussian noise of
// scale `sigma` added. Rate 0 is an exact no-op.
void net_mutate(NetGenome& g, double rate, double sigma, RngStream& rng);

double net_output(const NetGenome& g, const std::array<double, kNetInputs>& in);
std::array<double, kNetInputs> net_inputs(const History& h, Player seat);
// Mean absolute output difference over all 4^3 joint histories of length 3.
// The probe set is closed under swapping the players' components, so the
// result does not depend on the seat.
double net_dissimilarity(const NetGenome& a, const NetGenome& b);

class NeuralNetPolicy : public BehaviorPolicy {
 public:
  explicit NeuralNetPolicy(NetGenome genome);

  Distribution action_distribution(const History& h, Player seat) const override;
  std::string descriptor() const override;

  const NetGenome& genome() const { return genome_; }

 private:
  NetGenome genome_;
  std::string descriptor_;
};

// ---- Co-evolution ------------------------------------------------------------

struct EvolutionParams {
  int pool_size = 32;
  int generations = 30;
  int tournament = 4;         // selection tournament size
  double mutation_rate = 0.1;
  double crossover_rate = 0.7;
  double diversity_weight = 0.3;  // weight of mean pool dissimilarity in fitness
  int eval_rounds = 50;           // rounds per evaluation play
  double mutation_sigma = 0.5;    // Gaussian step for network genes
  int elite = 2;                  // individuals copied unchanged per generation
};

// Two pools (player i's and player j's) bred concurrently: every
// generation each individual plays `eval_rounds` rounds against a random
// member of the other pool; fitness is its mean payoff plus
// diversity_weight times its mean dissimilarity to pool peers. Selection
// is by tournament, then crossover and mutation. Draws happen in a fixed
// documented order (pool i genomes, then pool j genomes, then per
// generation: evaluations, breeding), so identical seeds give identical
// pools. Returns the fittest `count` policies per pool, preferring
// distinct descriptors.
std::pair<PolicySet, PolicySet> coevolve_decision_trees(const Game& g, int count,
                                                        const EvolutionParams& params,
                                                        RngStream& rng);
std::pair<PolicySet, PolicySet> coevolve_neural_nets(const Game& g, int count,
                                                     const EvolutionParams& params,
                                                     RngStream& rng);

// The complete final pools in the same ranked order (the fixed-count
// variants above return a prefix of these), for callers that must scan
// deeper, e.g. to collect a quota of distinct policies.
std::pair<PolicySet, PolicySet> ranked_decision_tree_pools(const Game& g,
                                                           const EvolutionParams& params,
                                                           RngStream& rng);
std::pair<PolicySet, PolicySet> ranked_neural_net_pools(const Game& g,
                                                        const EvolutionParams& params,
                                                        RngStream& rng);

// ---- Fictitious play ----------------------------------------------------------

// Best-responds to the empirical frequency of the opponent's past actions;
// ties are split uniformly, and the empty history plays uniformly.
PolicyPtr fictitious_play_policy(const Game& g);

// ---- Experiment type sets -------------------------------------------------------

enum class GeneratorKind { lft, cdt, cnn };

std::string generator_name(GeneratorKind kind);
GeneratorKind parse_generator(const std::string& name);

struct TypeSetSample {
  PolicySet experts;    // five unique policies for the row seat
  PolicySet types;      // five unique policies for the column seat
  PolicyPtr true_type;  // in `types` exactly when include_true was set
};

// Draws the experiment's policy sets from one generator family. With
// include_true the true type is one of the five hypothesised types;
// without it, a sixth unique policy. Throws GenerationError when the
// family cannot produce enough unique policies.
TypeSetSample sample_type_sets(GeneratorKind kind, const Game& g, RngStream& rng,
                               bool include_true, const EvolutionParams& params = {});

}  // namespace ehba
