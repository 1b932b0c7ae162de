// Command-line front end: benchmark export, policy-set generation, and the
// configurable repeated-game experiment with its reports.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "ehba/errors.hpp"
#include "ehba/game.hpp"
#include "ehba/generators.hpp"
#include "ehba/harness.hpp"
#include "ehba/policy_io.hpp"
#include "ehba/rng.hpp"

namespace {

using namespace ehba;

// Flags left at their sentinel (empty string, zero) keep the profile value.
struct RunOptions {
  std::string profile = "desk";
  std::vector<std::string> games;
  std::string generator;
  std::vector<std::string> algorithms;
  std::string wrapped;
  std::string opponent;
  std::string include_true;
  std::vector<std::string> seeds;
  int rounds = 0;
  int horizon = 0;
  std::string payoff_mode = "auto";
  double booster = 0.0;
  bool trace = false;
  EvolutionParams evolution;
  AlgorithmParams algo;
};

std::vector<std::uint64_t> parse_seeds(const std::vector<std::string>& items) {
  std::vector<std::uint64_t> out;
  for (const std::string& item : items) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw ConfigError("bad seed value: " + item);
    }
    out.push_back(std::stoull(item));
  }
  return out;
}

std::string join_list(const std::vector<std::string>& items) {
  std::string out;
  for (const std::string& item : items) {
    if (!out.empty()) out += ',';
    out += item;
  }
  return out;
}

std::vector<bool> parse_wrapped(const std::string& value) {
  if (value == "on") return {true};
  if (value == "off") return {false};
  return {false, true};
}

std::vector<bool> parse_include(const std::string& value) {
  if (value == "yes") return {true};
  if (value == "no") return {false};
  return {true, false};
}

ExperimentConfig build_config(const RunOptions& opt) {
  ExperimentConfig cfg = opt.profile == "paper" ? paper_profile() : desk_profile();
  if (!opt.games.empty()) cfg.games = select_games(join_list(opt.games));
  if (!opt.generator.empty()) cfg.generator = parse_generator(opt.generator);
  if (!opt.algorithms.empty()) cfg.algorithms = opt.algorithms;
  if (!opt.wrapped.empty()) cfg.wrapped_values = parse_wrapped(opt.wrapped);
  if (!opt.opponent.empty()) cfg.opponent_mode = parse_opponent_mode(opt.opponent);
  if (!opt.include_true.empty()) cfg.include_true_values = parse_include(opt.include_true);
  if (!opt.seeds.empty()) cfg.seeds = parse_seeds(opt.seeds);
  if (opt.rounds > 0) cfg.rounds = opt.rounds;
  if (opt.horizon > 0) cfg.horizon = opt.horizon;
  if (opt.payoff_mode == "average") cfg.forced_mode = PayoffMode::average;
  if (opt.payoff_mode == "total") cfg.forced_mode = PayoffMode::total;
  if (opt.booster > 0.0) cfg.booster = opt.booster;
  cfg.evolution = opt.evolution;
  cfg.algo_params = opt.algo;
  cfg.write_trace = opt.trace;
  return cfg;
}

void add_evolution_options(CLI::App& cmd, EvolutionParams& p) {
  auto* grp = cmd.add_option_group("evolution", "co-evolution knobs (cdt/cnn families)");
  grp->add_option("--pool-size", p.pool_size, "individuals per pool")->capture_default_str();
  grp->add_option("--generations", p.generations, "breeding generations")->capture_default_str();
  grp->add_option("--tournament", p.tournament, "selection tournament size")->capture_default_str();
  grp->add_option("--mutation-rate", p.mutation_rate, "per-node / per-gene mutation probability")
      ->capture_default_str();
  grp->add_option("--crossover-rate", p.crossover_rate, "probability a child is a crossover")
      ->capture_default_str();
  grp->add_option("--diversity-weight", p.diversity_weight, "dissimilarity weight in fitness")
      ->capture_default_str();
  grp->add_option("--eval-rounds", p.eval_rounds, "rounds per fitness evaluation play")
      ->capture_default_str();
  grp->add_option("--mutation-sigma", p.mutation_sigma, "gaussian step for network genes")
      ->capture_default_str();
  grp->add_option("--elite", p.elite, "individuals copied unchanged per generation")
      ->capture_default_str();
}

void add_algorithm_options(CLI::App& cmd, AlgorithmParams& p) {
  auto* grp = cmd.add_option_group("algorithm constants");
  grp->add_option("--eee-explore-len", p.eee.explore_len, "rounds per exploration phase")
      ->capture_default_str();
  grp->add_option("--eee-window", p.eee.schedule_window, "explore probability 1/ceil(t/window)")
      ->capture_default_str();
  grp->add_option("--s-persistence", p.s.persistence, "aspiration weight kept per update")
      ->capture_default_str();
  grp->add_option("--s-aspiration", p.s.initial_aspiration, "initial aspiration level")
      ->capture_default_str();
  grp->add_option("--hedge-eta", p.hedge.eta, "hedge learning rate")->capture_default_str();
  grp->add_option("--exp3-eta", p.exp3.eta, "exp3 learning rate")->capture_default_str();
  grp->add_option("--exp3-gamma", p.exp3.gamma, "exp3 exploration floor mass")
      ->capture_default_str();
}

// The experiment options sit on the top-level command so a flat key=value
// config file can address them all; subcommands fall through to them.
void add_run_options(CLI::App& cmd, RunOptions& opt) {
  cmd.set_config("--config", "", "flat key=value experiment config; explicit flags win");
  cmd.add_option("--profile", opt.profile, "experiment scale: desk or paper")
      ->check(CLI::IsMember({"desk", "paper"}))
      ->capture_default_str();
  cmd.add_option("--games", opt.games,
                 "all, conflict, no-conflict, or comma-separated benchmark labels")
      ->delimiter(',');
  cmd.add_option("--generator", opt.generator, "policy family: lft, cdt or cnn")
      ->check(CLI::IsMember({"lft", "cdt", "cnn"}));
  cmd.add_option("--algos", opt.algorithms, "comma-separated expert algorithms")->delimiter(',');
  cmd.add_option("--wrapped", opt.wrapped, "payoff mixing wrapper: on, off or both")
      ->check(CLI::IsMember({"on", "off", "both"}));
  cmd.add_option("--opponent", opt.opponent, "type (play the sampled type) or fp (fictitious play)")
      ->check(CLI::IsMember({"type", "fp"}));
  cmd.add_option("--include-true", opt.include_true,
                 "true type among the hypothesised types: yes, no or both")
      ->check(CLI::IsMember({"yes", "no", "both"}));
  cmd.add_option("--seeds", opt.seeds, "comma-separated integer seeds")->delimiter(',');
  cmd.add_option("--rounds", opt.rounds, "rounds per play")->check(CLI::PositiveNumber);
  cmd.add_option("--horizon", opt.horizon, "planning depth")->check(CLI::PositiveNumber);
  cmd.add_option("--payoff-mode", opt.payoff_mode,
                 "payoff bookkeeping: auto (each algorithm's native mode), average or total")
      ->check(CLI::IsMember({"auto", "average", "total"}))
      ->capture_default_str();
  cmd.add_option("--booster", opt.booster, "prediction exponent in total mode")
      ->check(CLI::PositiveNumber);
  cmd.add_flag("--trace", opt.trace, "also write the per-round trace.csv on run");
  add_evolution_options(cmd, opt.evolution);
  add_algorithm_options(cmd, opt.algo);
}

void with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path);
  fn(out);
}

Game benchmark_game(const std::string& label) {
  for (const Game& g : ordinal_game_set()) {
    if (g.label() == label) return normalized(g);
  }
  throw ConfigError("unknown game label: " + label);
}

void print_summary(const std::vector<SummaryRow>& rows, std::ostream& out) {
  out << std::left << std::setw(11) << "algorithm" << std::setw(9) << "wrapped" << std::setw(14)
      << "include-true" << std::right << std::setw(6) << "plays" << std::setw(9) << "mean"
      << std::setw(13) << "best-expert" << std::setw(9) << "hba" << std::setw(9) << "t"
      << std::setw(11) << "p" << "\n";
  for (const SummaryRow& row : rows) {
    out << std::left << std::setw(11) << row.algorithm << std::setw(9)
        << (row.wrapped ? "on" : "off") << std::setw(14) << (row.include_true ? "yes" : "no")
        << std::right << std::setw(6) << row.plays << std::fixed << std::setw(9)
        << std::setprecision(4) << row.mean_payoff << std::setw(13) << row.best_expert
        << std::setw(9) << row.hba;
    if (row.wrapped) {
      out << std::setw(9) << std::setprecision(3) << row.t_stat << std::setw(11)
          << std::setprecision(5) << row.p_value;
    } else {
      out << std::setw(9) << "-" << std::setw(11) << "-";
    }
    out << "\n" << std::defaultfloat;
  }
}

int cmd_games(const std::string& out_path) {
  with_output(out_path, [](std::ostream& out) { write_games_csv(out); });
  return 0;
}

struct GenerateOptions {
  std::string game;
  std::string generator = "lft";
  std::uint64_t seed = 1;
  int count = 5;
  std::string seat = "col";
  std::string out_path;
};

int cmd_generate(const GenerateOptions& opt, const EvolutionParams& evolution) {
  const Game g = benchmark_game(opt.game);
  const Player seat = opt.seat == "row" ? Player::row : Player::col;
  const GeneratorKind kind = parse_generator(opt.generator);
  RngStream rng(opt.seed, "generate:" + opt.game + ":" + opt.generator);
  PolicySet set;
  if (kind == GeneratorKind::lft) {
    set = generate_lft_set(g, opt.count, seat, rng);
  } else {
    auto pools = kind == GeneratorKind::cdt
                     ? coevolve_decision_trees(g, opt.count, evolution, rng)
                     : coevolve_neural_nets(g, opt.count, evolution, rng);
    set = seat == Player::row ? std::move(pools.first) : std::move(pools.second);
  }
  if (opt.out_path.empty()) {
    std::cout << policy_set_to_json(set).dump(2) << "\n";
  } else {
    save_policy_set(opt.out_path, set);
    std::cout << "wrote " << set.policies.size() << " " << opt.generator << " policies ("
              << opt.seat << " seat, " << opt.game << ") to " << opt.out_path << "\n";
  }
  return 0;
}

int cmd_run(const RunOptions& opt, const std::string& out_dir) {
  ExperimentConfig cfg = build_config(opt);
  cfg.out_dir = out_dir;
  validate_config(cfg);
  std::cout << cfg.games.size() << " games x " << cfg.seeds.size() << " seeds x "
            << cfg.algorithms.size() << " algorithms, " << cfg.rounds << " rounds\n";
  const ExperimentResult result = run_experiment(cfg);
  print_summary(result.summaries, std::cout);
  if (!cfg.out_dir.empty()) std::cout << "artifacts in " << cfg.out_dir << "\n";
  if (result.failures > 0) {
    std::cout << result.failures << " plays failed; see plays.csv\n";
    return 1;
  }
  return 0;
}

int cmd_plot_data(const RunOptions& opt, const std::string& out_path) {
  ExperimentConfig cfg = build_config(opt);
  cfg.out_dir.clear();
  cfg.write_trace = false;
  const ExperimentResult result = run_experiment(cfg);
  const std::vector<PlotRow> rows = emit_plot_data(result.plays);
  with_output(out_path, [&](std::ostream& out) { write_plot_csv(rows, out); });
  return result.failures == 0 ? 0 : 1;
}

int cmd_report(const RunOptions& opt) {
  ExperimentConfig cfg = build_config(opt);
  cfg.out_dir.clear();
  cfg.write_trace = false;
  const ExperimentResult result = run_experiment(cfg);
  print_summary(result.summaries, std::cout);
  if (result.failures > 0) {
    std::cout << result.failures << " plays failed\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"repeated 2x2 matrix-game experiments: expert algorithms, confidence-weighted"
               " payoff mixing, and planner baselines"};
  app.require_subcommand(1);
  RunOptions opt;
  add_run_options(app, opt);

  auto* games = app.add_subcommand("games", "export the 78-game benchmark as CSV");
  std::string games_out;
  games->add_option("--out", games_out, "output file (default: stdout)");

  auto* generate = app.add_subcommand(
      "generate", "generate a policy set and save it as JSON (cdt/cnn honour the evolution knobs)");
  GenerateOptions gen_opt;
  generate->add_option("--game", gen_opt.game, "benchmark game label")->required();
  generate->add_option("--generator", gen_opt.generator, "policy family: lft, cdt or cnn")
      ->check(CLI::IsMember({"lft", "cdt", "cnn"}))
      ->capture_default_str();
  generate->add_option("--seed", gen_opt.seed, "generation seed")->capture_default_str();
  generate->add_option("--count", gen_opt.count, "policies in the set")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  generate->add_option("--seat", gen_opt.seat, "which player the policies act for")
      ->check(CLI::IsMember({"row", "col"}))
      ->capture_default_str();
  generate->add_option("--out", gen_opt.out_path, "output file (default: stdout)");

  auto* run = app.add_subcommand("run", "run the experiment and write CSV artifacts");
  std::string run_out = "out";
  run->add_option("--out", run_out, "artifact directory")->capture_default_str();

  auto* plot = app.add_subcommand("plot-data", "emit learning-curve data (round x condition)");
  std::string plot_out;
  plot->add_option("--out", plot_out, "output file (default: stdout)");

  auto* report = app.add_subcommand("report", "recompute and print the paired t-test summary");

  // Experiment flags live on the top-level command; let them be written
  // after the subcommand name too.
  for (CLI::App* sub : {games, generate, run, plot, report}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (games->parsed()) return cmd_games(games_out);
    if (generate->parsed()) return cmd_generate(gen_opt, opt.evolution);
    if (run->parsed()) return cmd_run(opt, run_out);
    if (plot->parsed()) return cmd_plot_data(opt, plot_out);
    if (report->parsed()) return cmd_report(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
