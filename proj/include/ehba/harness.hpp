#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ehba/experts.hpp"
#include "ehba/generators.hpp"
#include "ehba/meta.hpp"

namespace ehba {

// Who sits on the other side of the table: the sampled true type, or an
// adaptive fictitious player best-responding to our empirical frequencies.
enum class OpponentMode { random_type, fictitious_play };

const char* opponent_mode_name(OpponentMode mode);
OpponentMode parse_opponent_mode(const std::string& name);  // "type" | "fp"

struct ExperimentConfig {
  std::vector<std::string> games;  // canonical benchmark labels
  GeneratorKind generator = GeneratorKind::lft;
  std::vector<std::string> algorithms{"ucb1", "eee", "s", "hedge", "exp3"};
  std::vector<bool> wrapped_values{false, true};
  OpponentMode opponent_mode = OpponentMode::random_type;
  std::vector<bool> include_true_values{true};
  std::vector<std::uint64_t> seeds;
  int rounds = 1000;
  int horizon = 3;
  // Per-algorithm natural payoff bookkeeping unless forced here.
  std::optional<PayoffMode> forced_mode;
  double booster = 3.0;
  EvolutionParams evolution;
  AlgorithmParams algo_params;
  std::string out_dir;  // empty: no files written
  bool write_trace = false;
};

// Throws ConfigError when a field is out of contract (no games, no seeds,
// rounds or horizon below one, unknown algorithm, empty mode lists).
void validate_config(const ExperimentConfig& cfg);

// Resolves "all", "conflict", "no-conflict" or a comma-separated list of
// explicit labels against the canonical benchmark set.
std::vector<std::string> select_games(const std::string& selection);

// Ten benchmark games x 3 seeds x 1,000 rounds, horizon 3: the scale all
// bundled checks run at. The subset mixes no-conflict and conflict games.
ExperimentConfig desk_profile();
// All 78 games x 10 seeds x 5,000 rounds, horizon 5.
ExperimentConfig paper_profile();

struct TraceRow {
  int t = 0;                      // 1-based round
  double confidence = 1.0;        // confidence in effect when selecting
  std::vector<double> posterior;  // belief over types when selecting
  int expert = -1;
  JointAction action{0, 0};
  double payoff = 0.0;  // player i, normalized scale
};

struct PlayRecord {
  std::string game;
  std::uint64_t seed = 0;
  std::string algorithm;
  bool wrapped = false;
  bool include_true = true;
  std::vector<TraceRow> rows;
  double mean_payoff = 0.0;
  bool failed = false;
  std::string error;
};

struct PlayDebug {
  // Forces the mixing weight to zero while leaving everything else of the
  // wrapped path in place; used to check degeneracy against the plain path.
  bool pin_confidence_zero = false;
};

// One repeated-game play: player i runs the (optionally wrapped) expert
// algorithm over 5 generated experts, player j follows the opponent mode.
// Nothing inside the play is told how many rounds it will last.
PlayRecord run_play(const ExperimentConfig& cfg, const Game& game, std::uint64_t seed,
                    const std::string& algorithm, bool wrapped, bool include_true,
                    const PlayDebug& dbg = {});

// Highest mean payoff over the five experts when player i follows that
// expert exclusively, replayed against the same opponent construction and
// seed streams.
double best_expert_baseline(const ExperimentConfig& cfg, const Game& game, std::uint64_t seed,
                            bool include_true);

// Mean payoff when player i picks actions with the depth-h planner over
// the same hypothesis set each round.
double hba_baseline(const ExperimentConfig& cfg, const Game& game, std::uint64_t seed,
                    bool include_true);

// Lower-level forms of the two baselines taking explicit expert/type sets
// and an explicit opponent, so scripted matchups can be replayed directly.
// `stream_label` takes the place of the game label in the stream names.
double best_follow_payoff(const Game& g, const PolicySet& experts, const BehaviorPolicy& opponent,
                          std::uint64_t seed, const std::string& stream_label, int rounds);
double hba_play_payoff(const Game& g, const PolicySet& types, const BehaviorPolicy& opponent,
                       std::uint64_t seed, const std::string& stream_label, int rounds,
                       const PlannerConfig& pc);

struct BaselineRecord {
  std::string game;
  std::uint64_t seed = 0;
  bool include_true = true;
  double best_expert = 0.0;
  double hba = 0.0;
  bool failed = false;
  std::string error;
};

struct SummaryRow {
  std::string algorithm;
  bool wrapped = false;
  bool include_true = true;
  int plays = 0;                     // successful plays aggregated
  std::vector<double> play_payoffs;  // per-play means, (game, seed) order
  double mean_payoff = 0.0;
  double best_expert = 0.0;  // mean of per-play baselines
  double hba = 0.0;
  // Paired two-sided test against the plain counterpart; identity on
  // plain rows (t = 0, p = 1).
  double t_stat = 0.0;
  double p_value = 1.0;
};

struct ExperimentResult {
  std::vector<PlayRecord> plays;  // factorial order; failed plays included
  std::vector<BaselineRecord> baselines;
  std::vector<SummaryRow> summaries;
  int failures = 0;
};

// Full factorial over (include_true x games x seeds x algorithms x
// wrapped). When cfg.out_dir is set, writes plays.csv, baselines.csv,
// summary.csv and optionally trace.csv there. Failed plays are recorded
// with their error, excluded from every aggregate, and counted.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// "ehba+ucb1/included" and friends; the condition key used in plot data.
std::string condition_label(const std::string& algorithm, bool wrapped, bool include_true);

struct PlotRow {
  int round = 0;
  std::string condition;
  double mean = 0.0;    // cumulative-average payoff, averaged over plays
  double stderr_ = 0.0; // sample standard error over plays
};

// Learning curves: for every condition and round, the mean and standard
// error over plays of the payoff averaged from round 1 to that round.
// Failed plays are skipped; throws DomainError when nothing remains.
std::vector<PlotRow> emit_plot_data(const std::vector<PlayRecord>& records);

// CSV artifact writers (UTF-8, header row, fixed column order).
void write_games_csv(std::ostream& out);  // the 78-game benchmark
void write_plays_csv(const std::vector<PlayRecord>& plays, std::ostream& out);
void write_baselines_csv(const std::vector<BaselineRecord>& baselines, std::ostream& out);
void write_summary_csv(const std::vector<SummaryRow>& summaries, std::ostream& out);
void write_trace_csv(const std::vector<PlayRecord>& plays, std::ostream& out);
void write_plot_csv(const std::vector<PlotRow>& rows, std::ostream& out);

}  // namespace ehba
