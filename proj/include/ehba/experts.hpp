#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ehba/policy.hpp"
#include "ehba/rng.hpp"

namespace ehba {

// Whether an algorithm consumes running-average payoffs or accumulated
// totals.
enum class PayoffMode { average, total };

struct EeeParams {
  int explore_len = 10;      // rounds per exploration phase
  int schedule_window = 100; // explore probability 1/ceil(t/window)
};

struct SParams {
  double persistence = 0.99;       // weight kept by the old aspiration
  double initial_aspiration = 1.0; // optimistic for payoffs in [0,1]
};

struct HedgeParams {
  double eta = 0.1;
};

struct Exp3Params {
  double eta = 0.1;
  double gamma = 0.1;
};

struct AlgorithmParams {
  EeeParams eee;
  SParams s;
  HedgeParams hedge;
  Exp3Params exp3;
};

// An expert-selection rule f(payoffs): given one payoff figure per expert
// (observed, or mixed with predictions), produce a distribution over which
// expert to follow next. The payoff vector itself is bookkept by the
// caller, so the same state serves plain and wrapped runs; instances keep
// only variant-internal counters.
//
// Every variant spends its first K selections visiting each expert once,
// round-robin from a random starting offset, before its formula applies.
class ExpertAlgorithm {
 public:
  explicit ExpertAlgorithm(int num_experts);
  virtual ~ExpertAlgorithm() = default;

  virtual std::string name() const = 0;
  // The payoff bookkeeping this algorithm was designed around.
  virtual PayoffMode natural_mode() const = 0;
  // True when the algorithm expects feedback for every expert each round
  // rather than only for the expert actually followed.
  virtual bool full_information() const { return false; }

  // Must be called exactly once per round, before update().
  Distribution select(const std::vector<double>& payoffs, RngStream& rng);

  // Feeds back the sampled expert and its realized payoff;
  // `full_feedback`, when given, holds every expert's payoff against the
  // opponent's realized action.
  void update(int chosen, double realized, const std::vector<double>* full_feedback = nullptr);

  int num_experts() const { return k_; }
  int rounds() const { return rounds_; }

 protected:
  virtual Distribution select_impl(const std::vector<double>& payoffs, RngStream& rng) = 0;
  virtual void update_impl(int chosen, double realized, const std::vector<double>* full_feedback) {
  }

  int k_;
  int rounds_ = 0;       // select() calls so far
  int init_offset_ = -1; // start of the round-robin, drawn on first use
};

using AlgorithmPtr = std::unique_ptr<ExpertAlgorithm>;

// Builds "ucb1", "eee", "s", "hedge" or "exp3"; throws ConfigError on an
// unknown name.
AlgorithmPtr make_expert_algorithm(const std::string& name, int num_experts,
                                   const AlgorithmParams& params = {});

const std::vector<std::string>& expert_algorithm_names();

class Ucb1 : public ExpertAlgorithm {
 public:
  explicit Ucb1(int num_experts);
  std::string name() const override { return "ucb1"; }
  PayoffMode natural_mode() const override { return PayoffMode::average; }
  int pulls(int k) const { return counts_[k]; }

 protected:
  Distribution select_impl(const std::vector<double>& payoffs, RngStream& rng) override;
  void update_impl(int chosen, double realized, const std::vector<double>*) override;

 private:
  std::vector<int> counts_;
  long long total_ = 0;
};

class Eee : public ExpertAlgorithm {
 public:
  Eee(int num_experts, const EeeParams& params);
  std::string name() const override { return "eee"; }
  PayoffMode natural_mode() const override { return PayoffMode::average; }

 protected:
  Distribution select_impl(const std::vector<double>& payoffs, RngStream& rng) override;

 private:
  EeeParams params_;
  std::vector<int> exploit_visits_;
  int current_ = 0;
  int phase_left_ = 0;
};

class SAspiration : public ExpertAlgorithm {
 public:
  SAspiration(int num_experts, const SParams& params);
  std::string name() const override { return "s"; }
  PayoffMode natural_mode() const override { return PayoffMode::average; }
  double aspiration() const { return aspiration_; }

 protected:
  Distribution select_impl(const std::vector<double>& payoffs, RngStream& rng) override;
  void update_impl(int chosen, double realized, const std::vector<double>*) override;

 private:
  SParams params_;
  double aspiration_;
  int current_ = 0;
};

class Hedge : public ExpertAlgorithm {
 public:
  Hedge(int num_experts, const HedgeParams& params);
  std::string name() const override { return "hedge"; }
  PayoffMode natural_mode() const override { return PayoffMode::total; }
  bool full_information() const override { return true; }

 protected:
  Distribution select_impl(const std::vector<double>& payoffs, RngStream& rng) override;
  void update_impl(int chosen, double realized, const std::vector<double>* full_feedback) override;

 private:
  HedgeParams params_;
};

class Exp3 : public ExpertAlgorithm {
 public:
  Exp3(int num_experts, const Exp3Params& params);
  std::string name() const override { return "exp3"; }
  PayoffMode natural_mode() const override { return PayoffMode::total; }

 protected:
  Distribution select_impl(const std::vector<double>& payoffs, RngStream& rng) override;

 private:
  Exp3Params params_;
};

}  // namespace ehba
