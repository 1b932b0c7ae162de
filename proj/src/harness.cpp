#include "ehba/harness.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <set>

#include "ehba/beliefs.hpp"
#include "ehba/csv.hpp"
#include "ehba/errors.hpp"
#include "ehba/stats.hpp"

namespace ehba {

const char* opponent_mode_name(OpponentMode mode) {
  return mode == OpponentMode::random_type ? "type" : "fp";
}

OpponentMode parse_opponent_mode(const std::string& name) {
  if (name == "type") return OpponentMode::random_type;
  if (name == "fp") return OpponentMode::fictitious_play;
  throw ConfigError("unknown opponent mode: " + name);
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.games.empty()) throw ConfigError("config: no games selected");
  if (cfg.seeds.empty()) throw ConfigError("config: seed list is empty");
  if (cfg.rounds < 1) throw ConfigError("config: rounds must be at least 1");
  if (cfg.horizon < 1) throw ConfigError("config: horizon must be at least 1");
  if (cfg.algorithms.empty()) throw ConfigError("config: no expert algorithms selected");
  for (const std::string& a : cfg.algorithms) {
    make_expert_algorithm(a, 1, cfg.algo_params);  // throws on unknown names
  }
  if (cfg.wrapped_values.empty()) throw ConfigError("config: wrapped list is empty");
  if (cfg.include_true_values.empty()) throw ConfigError("config: include-true list is empty");
  if (cfg.booster < 1.0) throw ConfigError("config: booster must be at least 1");
  std::set<std::string> games(cfg.games.begin(), cfg.games.end());
  if (games.size() != cfg.games.size()) throw ConfigError("config: duplicate game label");
  std::set<std::uint64_t> seeds(cfg.seeds.begin(), cfg.seeds.end());
  if (seeds.size() != cfg.seeds.size()) throw ConfigError("config: duplicate seed");
}

namespace {

const std::vector<Game>& benchmark() {
  static const std::vector<Game> games = ordinal_game_set();
  return games;
}

const Game& find_game(const std::string& label) {
  for (const Game& g : benchmark()) {
    if (g.label() == label) return g;
  }
  throw ConfigError("unknown game label: " + label);
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::string item;
  for (char c : csv) {
    if (c == ',') {
      if (!item.empty()) out.push_back(item);
      item.clear();
    } else if (c != ' ') {
      item += c;
    }
  }
  if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

std::vector<std::string> select_games(const std::string& selection) {
  std::vector<std::string> out;
  if (selection == "all") {
    for (const Game& g : benchmark()) out.push_back(g.label());
    return out;
  }
  if (selection == "conflict" || selection == "no-conflict") {
    const bool want_no_conflict = selection == "no-conflict";
    for (const Game& g : benchmark()) {
      if (is_no_conflict(g) == want_no_conflict) out.push_back(g.label());
    }
    return out;
  }
  out = split_list(selection);
  if (out.empty()) throw ConfigError("empty game selection");
  for (const std::string& label : out) find_game(label);  // validate
  return out;
}

ExperimentConfig desk_profile() {
  ExperimentConfig cfg;
  // Three no-conflict and seven conflict games, in canonical order.
  int no_conflict = 0, conflict = 0;
  for (const Game& g : benchmark()) {
    if (is_no_conflict(g)) {
      if (no_conflict < 3) {
        cfg.games.push_back(g.label());
        ++no_conflict;
      }
    } else if (conflict < 7) {
      cfg.games.push_back(g.label());
      ++conflict;
    }
  }
  cfg.seeds = {1, 2, 3};
  cfg.rounds = 1000;
  cfg.horizon = 3;
  return cfg;
}

ExperimentConfig paper_profile() {
  ExperimentConfig cfg;
  cfg.games = select_games("all");
  for (std::uint64_t s = 1; s <= 10; ++s) cfg.seeds.push_back(s);
  cfg.rounds = 5000;
  cfg.horizon = 5;
  return cfg;
}

namespace {

struct PlaySetup {
  Game game;  // normalized payoffs
  PolicySet experts;
  PolicySet types;
  PolicyPtr opponent;
};

// The policy-generation and opponent streams are named by (seed, game)
// only, so every condition of a play — plain or wrapped, any algorithm —
// faces the same hypothesis sets and the same opponent randomness. That
// is what makes the wrapped-vs-plain comparisons paired.
PlaySetup make_setup(const ExperimentConfig& cfg, const Game& game, std::uint64_t seed,
                     bool include_true) {
  PlaySetup s;
  s.game = normalized(game);
  RngStream policy_rng(seed, "policy:" + game.label());
  TypeSetSample sample =
      sample_type_sets(cfg.generator, s.game, policy_rng, include_true, cfg.evolution);
  s.experts = std::move(sample.experts);
  s.types = std::move(sample.types);
  s.opponent = cfg.opponent_mode == OpponentMode::fictitious_play ? fictitious_play_policy(s.game)
                                                                  : sample.true_type;
  return s;
}

std::vector<double> snapshot(const Distribution& d) {
  std::vector<double> out(d.size());
  for (int k = 0; k < d.size(); ++k) out[k] = d[k];
  return out;
}

// Expected payoff of each expert's recommendation against the opponent's
// realized action; the full-information feedback for Hedge-style updates.
std::vector<double> full_feedback(const Game& g, const PolicySet& experts, const History& h,
                                  int opponent_action) {
  std::vector<double> fb(experts.policies.size());
  for (std::size_t e = 0; e < experts.policies.size(); ++e) {
    Distribution d = experts.policies[e]->action_distribution(h, Player::row);
    double v = 0.0;
    for (int a = 0; a < d.size(); ++a) v += d[a] * g.own_payoff(Player::row, a, opponent_action);
    fb[e] = v;
  }
  return fb;
}

}  // namespace

PlayRecord run_play(const ExperimentConfig& cfg, const Game& game, std::uint64_t seed,
                    const std::string& algorithm, bool wrapped, bool include_true,
                    const PlayDebug& dbg) {
  PlayRecord rec;
  rec.game = game.label();
  rec.seed = seed;
  rec.algorithm = algorithm;
  rec.wrapped = wrapped;
  rec.include_true = include_true;

  PlaySetup setup = make_setup(cfg, game, seed, include_true);
  const int num_experts = static_cast<int>(setup.experts.policies.size());
  AlgorithmPtr algo = make_expert_algorithm(algorithm, num_experts, cfg.algo_params);
  const PayoffMode mode = cfg.forced_mode.value_or(algo->natural_mode());
  const MixConfig mix{mode, cfg.booster};

  ExpertStats stats(num_experts);
  BeliefState beliefs = make_uniform_beliefs(static_cast<int>(setup.types.policies.size()));
  ConfidenceState conf = make_confidence(1.0);
  const ConfidenceState pinned = make_confidence(0.0);

  // The algorithm stream is deliberately not named by `wrapped`: the
  // plain and wrapped runs start from identical draws and diverge only
  // through the payoffs they see.
  RngStream algo_rng(seed, "algo:" + game.label() + ":" + algorithm);
  RngStream opp_rng(seed, "opponent:" + game.label());

  History h;
  h.reserve(cfg.rounds);
  rec.rows.reserve(cfg.rounds);
  double total = 0.0;
  for (int t = 1; t <= cfg.rounds; ++t) {
    TraceRow row;
    row.t = t;
    row.posterior = snapshot(beliefs.posterior);
    Distribution selection;
    if (wrapped) {
      StepOutcome step =
          ehba_step(*algo, setup.game, setup.experts, setup.types, beliefs,
                    dbg.pin_confidence_zero ? pinned : conf, stats, h, cfg.horizon, mix, algo_rng);
      selection = step.selection;
      row.confidence = step.confidence;
      row.expert = step.expert;
      row.action.row = step.action;
    } else {
      selection = algo->select(stats.observed, algo_rng);
      selection.validate();
      row.confidence = conf.value();  // bookkeeping only; not used for play
      row.expert = selection.sample(algo_rng);
      row.action.row = sample_action(*setup.experts.policies[row.expert], h, Player::row, algo_rng);
    }
    row.action.col = sample_action(*setup.opponent, h, Player::col, opp_rng);
    row.payoff = setup.game.own_payoff(Player::row, row.action.row, row.action.col);
    total += row.payoff;

    // belief and confidence both condition on the history before this
    // round's opponent action
    conf = confidence_update(conf, setup.types, beliefs.posterior, h, row.action.col);
    beliefs = posterior_increment(beliefs, setup.types, h, row.action.col);

    std::vector<double> fb;
    if (algo->full_information()) fb = full_feedback(setup.game, setup.experts, h, row.action.col);
    if (mode == PayoffMode::average) {
      stats.record_average(row.expert, row.payoff);
    } else if (algo->full_information()) {
      stats.record_total_full(row.expert, fb);
    } else {
      stats.record_total_weighted(row.expert, row.payoff, selection[row.expert]);
    }
    algo->update(row.expert, row.payoff, algo->full_information() ? &fb : nullptr);

    h.push_back(row.action);
    rec.rows.push_back(std::move(row));
  }
  rec.mean_payoff = total / cfg.rounds;
  return rec;
}

double best_follow_payoff(const Game& g, const PolicySet& experts, const BehaviorPolicy& opponent,
                          std::uint64_t seed, const std::string& stream_label, int rounds) {
  if (experts.policies.empty()) throw ConfigError("best_follow_payoff: no experts");
  if (rounds < 1) throw ConfigError("best_follow_payoff: rounds must be at least 1");
  double best = 0.0;
  for (std::size_t e = 0; e < experts.policies.size(); ++e) {
    RngStream own_rng(seed, "follow:" + stream_label + ":" + std::to_string(e));
    RngStream opp_rng(seed, "opponent:" + stream_label);
    History h;
    h.reserve(rounds);
    double total = 0.0;
    for (int t = 0; t < rounds; ++t) {
      JointAction a;
      a.row = sample_action(*experts.policies[e], h, Player::row, own_rng);
      a.col = sample_action(opponent, h, Player::col, opp_rng);
      total += g.own_payoff(Player::row, a.row, a.col);
      h.push_back(a);
    }
    const double mean = total / rounds;
    if (e == 0 || mean > best) best = mean;
  }
  return best;
}

double best_expert_baseline(const ExperimentConfig& cfg, const Game& game, std::uint64_t seed,
                            bool include_true) {
  PlaySetup setup = make_setup(cfg, game, seed, include_true);
  return best_follow_payoff(setup.game, setup.experts, *setup.opponent, seed, game.label(),
                            cfg.rounds);
}

double hba_play_payoff(const Game& g, const PolicySet& types, const BehaviorPolicy& opponent,
                       std::uint64_t seed, const std::string& stream_label, int rounds,
                       const PlannerConfig& pc) {
  if (rounds < 1) throw ConfigError("hba_play_payoff: rounds must be at least 1");
  BeliefState beliefs = make_uniform_beliefs(static_cast<int>(types.policies.size()));
  RngStream tie_rng(seed, "hba:" + stream_label);
  RngStream opp_rng(seed, "opponent:" + stream_label);
  History h;
  h.reserve(rounds);
  double total = 0.0;
  for (int t = 0; t < rounds; ++t) {
    JointAction a;
    a.row = hba_select(g, types, beliefs, h, pc, tie_rng);
    a.col = sample_action(opponent, h, Player::col, opp_rng);
    total += g.own_payoff(Player::row, a.row, a.col);
    beliefs = posterior_increment(beliefs, types, h, a.col);
    h.push_back(a);
  }
  return total / rounds;
}

double hba_baseline(const ExperimentConfig& cfg, const Game& game, std::uint64_t seed,
                    bool include_true) {
  PlaySetup setup = make_setup(cfg, game, seed, include_true);
  PlannerConfig pc;
  pc.horizon = cfg.horizon;
  pc.average = true;
  return hba_play_payoff(setup.game, setup.types, *setup.opponent, seed, game.label(), cfg.rounds,
                         pc);
}

std::string condition_label(const std::string& algorithm, bool wrapped, bool include_true) {
  return (wrapped ? "ehba+" + algorithm : algorithm) +
         (include_true ? "/included" : "/excluded");
}

namespace {

std::string yes_no(bool v) { return v ? "yes" : "no"; }

void write_file(const std::string& dir, const std::string& name,
                const std::function<void(std::ostream&)>& body) {
  std::filesystem::path path = std::filesystem::path(dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path.string());
  body(out);
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  ExperimentResult res;
  std::vector<const Game*> games;
  for (const std::string& label : cfg.games) games.push_back(&find_game(label));

  for (bool include_true : cfg.include_true_values) {
    for (const Game* game : games) {
      for (std::uint64_t seed : cfg.seeds) {
        BaselineRecord base;
        base.game = game->label();
        base.seed = seed;
        base.include_true = include_true;
        try {
          base.best_expert = best_expert_baseline(cfg, *game, seed, include_true);
          base.hba = hba_baseline(cfg, *game, seed, include_true);
        } catch (const std::exception& err) {
          base.failed = true;
          base.error = err.what();
          ++res.failures;
        }
        res.baselines.push_back(std::move(base));
        for (const std::string& algorithm : cfg.algorithms) {
          for (bool wrapped : cfg.wrapped_values) {
            try {
              res.plays.push_back(run_play(cfg, *game, seed, algorithm, wrapped, include_true));
            } catch (const std::exception& err) {
              PlayRecord failed;
              failed.game = game->label();
              failed.seed = seed;
              failed.algorithm = algorithm;
              failed.wrapped = wrapped;
              failed.include_true = include_true;
              failed.failed = true;
              failed.error = err.what();
              res.plays.push_back(std::move(failed));
              ++res.failures;
            }
          }
        }
      }
    }
  }

  // Condition summaries, in (include_true, algorithm, wrapped) config order.
  for (bool include_true : cfg.include_true_values) {
    // baseline means for this include setting
    std::vector<double> be, hb;
    for (const BaselineRecord& b : res.baselines) {
      if (b.include_true == include_true && !b.failed) {
        be.push_back(b.best_expert);
        hb.push_back(b.hba);
      }
    }
    for (const std::string& algorithm : cfg.algorithms) {
      for (bool wrapped : cfg.wrapped_values) {
        SummaryRow row;
        row.algorithm = algorithm;
        row.wrapped = wrapped;
        row.include_true = include_true;
        for (const PlayRecord& p : res.plays) {
          if (p.algorithm == algorithm && p.wrapped == wrapped &&
              p.include_true == include_true && !p.failed) {
            row.play_payoffs.push_back(p.mean_payoff);
          }
        }
        row.plays = static_cast<int>(row.play_payoffs.size());
        row.mean_payoff = row.play_payoffs.empty() ? 0.0 : mean_of(row.play_payoffs);
        row.best_expert = be.empty() ? 0.0 : mean_of(be);
        row.hba = hb.empty() ? 0.0 : mean_of(hb);
        if (wrapped) {
          // pair with the plain counterpart on plays where both succeeded
          std::vector<double> ours, theirs;
          for (const PlayRecord& p : res.plays) {
            if (p.algorithm != algorithm || p.include_true != include_true || !p.wrapped ||
                p.failed) {
              continue;
            }
            for (const PlayRecord& q : res.plays) {
              if (q.algorithm == algorithm && q.include_true == include_true && !q.wrapped &&
                  !q.failed && q.game == p.game && q.seed == p.seed) {
                ours.push_back(p.mean_payoff);
                theirs.push_back(q.mean_payoff);
                break;
              }
            }
          }
          TTestResult tt = paired_t_test(ours, theirs);
          row.t_stat = tt.t;
          row.p_value = tt.p;
        }
        res.summaries.push_back(std::move(row));
      }
    }
  }

  if (!cfg.out_dir.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    write_file(cfg.out_dir, "plays.csv", [&](std::ostream& o) { write_plays_csv(res.plays, o); });
    write_file(cfg.out_dir, "baselines.csv",
               [&](std::ostream& o) { write_baselines_csv(res.baselines, o); });
    write_file(cfg.out_dir, "summary.csv",
               [&](std::ostream& o) { write_summary_csv(res.summaries, o); });
    if (cfg.write_trace) {
      write_file(cfg.out_dir, "trace.csv",
                 [&](std::ostream& o) { write_trace_csv(res.plays, o); });
    }
  }
  return res;
}

std::vector<PlotRow> emit_plot_data(const std::vector<PlayRecord>& records) {
  std::map<std::string, std::vector<const PlayRecord*>> groups;
  for (const PlayRecord& r : records) {
    if (!r.failed) {
      groups[condition_label(r.algorithm, r.wrapped, r.include_true)].push_back(&r);
    }
  }
  if (groups.empty()) throw DomainError("plot data: no successful plays");
  std::vector<PlotRow> out;
  for (const auto& [condition, plays] : groups) {
    const std::size_t rounds = plays.front()->rows.size();
    for (const PlayRecord* p : plays) {
      if (p->rows.size() != rounds) {
        throw ConfigError("plot data: plays of unequal length in one condition");
      }
    }
    std::vector<double> running(plays.size(), 0.0);
    for (std::size_t t = 0; t < rounds; ++t) {
      std::vector<double> cums(plays.size());
      for (std::size_t k = 0; k < plays.size(); ++k) {
        running[k] += plays[k]->rows[t].payoff;
        cums[k] = running[k] / (t + 1);
      }
      PlotRow row;
      row.round = static_cast<int>(t + 1);
      row.condition = condition;
      row.mean = mean_of(cums);
      row.stderr_ = stderr_of(cums);
      out.push_back(std::move(row));
    }
  }
  return out;
}

void write_games_csv(std::ostream& out) {
  CsvWriter w(out, {"label", "no_conflict", "pi_00", "pi_01", "pi_10", "pi_11", "pj_00", "pj_01",
                    "pj_10", "pj_11"});
  for (const Game& g : benchmark()) {
    std::vector<std::string> fields{g.label(), yes_no(is_no_conflict(g))};
    for (int own = 0; own < 2; ++own) {
      for (int opp = 0; opp < 2; ++opp) {
        fields.push_back(format_number(g.own_payoff(Player::row, own, opp)));
      }
    }
    for (int own = 0; own < 2; ++own) {
      for (int opp = 0; opp < 2; ++opp) {
        fields.push_back(format_number(g.own_payoff(Player::col, own, opp)));
      }
    }
    w.row(fields);
  }
}

void write_plays_csv(const std::vector<PlayRecord>& plays, std::ostream& out) {
  CsvWriter w(out, {"game", "seed", "algorithm", "wrapped", "include_true", "rounds",
                    "mean_payoff", "status", "error"});
  for (const PlayRecord& p : plays) {
    w.row({p.game, format_number(p.seed), p.algorithm, yes_no(p.wrapped),
           yes_no(p.include_true), format_number(static_cast<int>(p.rows.size())),
           p.failed ? "" : format_number(p.mean_payoff), p.failed ? "failed" : "ok", p.error});
  }
}

void write_baselines_csv(const std::vector<BaselineRecord>& baselines, std::ostream& out) {
  CsvWriter w(out, {"game", "seed", "include_true", "best_expert", "hba", "status", "error"});
  for (const BaselineRecord& b : baselines) {
    w.row({b.game, format_number(b.seed), yes_no(b.include_true),
           b.failed ? "" : format_number(b.best_expert), b.failed ? "" : format_number(b.hba),
           b.failed ? "failed" : "ok", b.error});
  }
}

void write_summary_csv(const std::vector<SummaryRow>& summaries, std::ostream& out) {
  CsvWriter w(out, {"algorithm", "wrapped", "include_true", "plays", "mean_payoff",
                    "best_expert", "hba", "t_stat", "p_value"});
  for (const SummaryRow& s : summaries) {
    w.row({s.algorithm, yes_no(s.wrapped), yes_no(s.include_true), format_number(s.plays),
           format_number(s.mean_payoff), format_number(s.best_expert), format_number(s.hba),
           format_number(s.t_stat), format_number(s.p_value)});
  }
}

void write_trace_csv(const std::vector<PlayRecord>& plays, std::ostream& out) {
  std::size_t num_types = 0;
  for (const PlayRecord& p : plays) {
    if (!p.failed && !p.rows.empty()) {
      num_types = std::max(num_types, p.rows.front().posterior.size());
    }
  }
  std::vector<std::string> header{"game",         "seed",   "algorithm", "wrapped",
                                  "include_true", "t",      "confidence", "expert",
                                  "action_i",     "action_j", "payoff"};
  for (std::size_t k = 0; k < num_types; ++k) header.push_back("posterior_" + std::to_string(k));
  CsvWriter w(out, header);
  for (const PlayRecord& p : plays) {
    if (p.failed) continue;
    for (const TraceRow& r : p.rows) {
      std::vector<std::string> fields{p.game,
                                      format_number(p.seed),
                                      p.algorithm,
                                      yes_no(p.wrapped),
                                      yes_no(p.include_true),
                                      format_number(r.t),
                                      format_number(r.confidence),
                                      format_number(r.expert),
                                      format_number(r.action.row),
                                      format_number(r.action.col),
                                      format_number(r.payoff)};
      for (std::size_t k = 0; k < num_types; ++k) {
        fields.push_back(k < r.posterior.size() ? format_number(r.posterior[k]) : "");
      }
      w.row(fields);
    }
  }
}

void write_plot_csv(const std::vector<PlotRow>& rows, std::ostream& out) {
  CsvWriter w(out, {"round", "condition", "mean_payoff", "stderr"});
  for (const PlotRow& r : rows) {
    w.row({format_number(r.round), r.condition, format_number(r.mean),
           format_number(r.stderr_)});
  }
}

}  // namespace ehba
