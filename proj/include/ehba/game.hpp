#pragma once

#include <array>
#include <string>
#include <vector>

namespace ehba {

// The row player is "i" (the agent under our control), the column player
// is "j" (the opponent being modelled).
enum class Player { row, col };

constexpr Player other(Player p) { return p == Player::row ? Player::col : Player::row; }

// One round of simultaneous play.
struct JointAction {
  int row = 0;
  int col = 0;
  friend bool operator==(const JointAction&, const JointAction&) = default;
};

using History = std::vector<JointAction>;

// A 2x2 bimatrix game. Both payoff matrices are indexed
// [row player's action][column player's action].
class Game {
 public:
  using Matrix = std::array<std::array<double, 2>, 2>;

  Game() = default;
  Game(std::string label, const Matrix& pi, const Matrix& pj)
      : label_(std::move(label)), pi_(pi), pj_(pj) {}

  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  double payoff_i(int r, int c) const { return pi_[r][c]; }
  double payoff_j(int r, int c) const { return pj_[r][c]; }
  const Matrix& matrix_i() const { return pi_; }
  const Matrix& matrix_j() const { return pj_; }

  // Payoff to `who` when it plays `own` and its opponent plays `opp`.
  double own_payoff(Player who, int own, int opp) const {
    return who == Player::row ? pi_[own][opp] : pj_[opp][own];
  }

  double payoff(Player who, const JointAction& a) const {
    return who == Player::row ? pi_[a.row][a.col] : pj_[a.row][a.col];
  }

 private:
  std::string label_;
  Matrix pi_{};
  Matrix pj_{};
};

// A mixed strategy over the two actions; probs[k] = P(action k).
struct MixedStrategy {
  std::array<double, 2> probs{1.0, 0.0};
};

struct SolvedStrategy {
  MixedStrategy strategy;
  double value = 0.0;
};

// All strategically distinct 2x2 games with strict ordinal payoffs in
// {1,2,3,4}, labelled RG-01..RG-78 in canonical-form order. There are
// exactly 78 of them.
std::vector<Game> ordinal_game_set();

// Lexicographically smallest flattening (payoff_i row-major, then payoff_j
// row-major) of the game under its eight relabelling symmetries: swapping
// the row player's actions, the column player's actions, and the players
// themselves. Two games are the "same" game exactly when their canonical
// forms match. Payoffs must be (near-)integers.
std::array<int, 8> canonical_form(const Game& g);

// True when some cell gives both players their highest payoff.
bool is_no_conflict(const Game& g);

// Rescales ordinal payoffs {1,2,3,4} to {0, 1/3, 2/3, 1}. Throws
// DomainError if either player's payoffs are not a permutation of 1..4.
Game normalized(const Game& g);

// The mixed strategy maximizing `who`'s guaranteed own payoff, together
// with that guaranteed value.
SolvedStrategy maximin_strategy(const Game& g, Player who);

// The punisher's mixed strategy minimizing the opponent's best-response
// payoff, together with the payoff the opponent can still secure. By
// minimax duality this value equals the opponent's maximin value.
SolvedStrategy minimax_punishment(const Game& g, Player punisher);

}  // namespace ehba
