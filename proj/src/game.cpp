#include "ehba/game.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "ehba/errors.hpp"

namespace ehba {
namespace {

using Matrix = Game::Matrix;

void swap_rows(Matrix& pi, Matrix& pj) {
  std::swap(pi[0], pi[1]);
  std::swap(pj[0], pj[1]);
}

void swap_cols(Matrix& pi, Matrix& pj) {
  for (int r = 0; r < 2; ++r) {
    std::swap(pi[r][0], pi[r][1]);
    std::swap(pj[r][0], pj[r][1]);
  }
}

// Exchanges the players' roles: the new row player is the old column
// player, so both matrices transpose and trade places.
void swap_players(Matrix& pi, Matrix& pj) {
  Matrix ni, nj;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      ni[r][c] = pj[c][r];
      nj[r][c] = pi[c][r];
    }
  }
  pi = ni;
  pj = nj;
}

std::array<int, 8> flatten(const Matrix& pi, const Matrix& pj) {
  std::array<int, 8> out{};
  int k = 0;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out[k++] = static_cast<int>(std::lround(pi[r][c]));
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out[k++] = static_cast<int>(std::lround(pj[r][c]));
  return out;
}

Game from_flat(const std::array<int, 8>& f, std::string label) {
  Matrix pi{{{double(f[0]), double(f[1])}, {double(f[2]), double(f[3])}}};
  Matrix pj{{{double(f[4]), double(f[5])}, {double(f[6]), double(f[7])}}};
  return Game(std::move(label), pi, pj);
}

// `who`'s payoffs arranged with rows = own actions, columns = opponent
// actions, so the same solver serves both seats.
Matrix own_matrix(const Game& g, Player who) {
  Matrix m;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) m[a][b] = g.own_payoff(who, a, b);
  return m;
}

}  // namespace

std::array<int, 8> canonical_form(const Game& g) {
  std::array<int, 8> best{};
  bool first = true;
  // Every symmetry decomposes as (maybe swap players) then (maybe swap
  // rows) then (maybe swap columns), so these eight cover the whole group.
  for (int s = 0; s < 2; ++s) {
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        Matrix pi = g.matrix_i(), pj = g.matrix_j();
        if (s) swap_players(pi, pj);
        if (r) swap_rows(pi, pj);
        if (c) swap_cols(pi, pj);
        auto flat = flatten(pi, pj);
        if (first || flat < best) {
          best = flat;
          first = false;
        }
      }
    }
  }
  return best;
}

std::vector<Game> ordinal_game_set() {
  std::array<int, 4> perm{1, 2, 3, 4};
  std::vector<std::array<int, 4>> perms;
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::set<std::array<int, 8>> canon;
  for (const auto& a : perms) {
    for (const auto& b : perms) {
      Matrix pi{{{double(a[0]), double(a[1])}, {double(a[2]), double(a[3])}}};
      Matrix pj{{{double(b[0]), double(b[1])}, {double(b[2]), double(b[3])}}};
      canon.insert(canonical_form(Game("", pi, pj)));
    }
  }

  std::vector<Game> out;
  out.reserve(canon.size());
  int idx = 1;
  for (const auto& f : canon) {
    char label[16];
    std::snprintf(label, sizeof label, "RG-%02d", idx++);
    out.push_back(from_flat(f, label));
  }
  return out;
}

bool is_no_conflict(const Game& g) {
  double mi = g.payoff_i(0, 0), mj = g.payoff_j(0, 0);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      mi = std::max(mi, g.payoff_i(r, c));
      mj = std::max(mj, g.payoff_j(r, c));
    }
  }
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      if (g.payoff_i(r, c) == mi && g.payoff_j(r, c) == mj) return true;
  return false;
}

Game normalized(const Game& g) {
  for (const Matrix* m : {&g.matrix_i(), &g.matrix_j()}) {
    std::array<double, 4> vals{(*m)[0][0], (*m)[0][1], (*m)[1][0], (*m)[1][1]};
    std::sort(vals.begin(), vals.end());
    for (int k = 0; k < 4; ++k) {
      if (vals[k] != double(k + 1)) {
        throw DomainError("normalized: game '" + g.label() +
                          "' does not have strict ordinal payoffs 1..4");
      }
    }
  }
  Matrix pi = g.matrix_i(), pj = g.matrix_j();
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      pi[r][c] = (pi[r][c] - 1.0) / 3.0;
      pj[r][c] = (pj[r][c] - 1.0) / 3.0;
    }
  }
  return Game(g.label(), pi, pj);
}

SolvedStrategy maximin_strategy(const Game& g, Player who) {
  const Matrix m = own_matrix(g, who);
  const double low0 = std::min(m[0][0], m[0][1]);
  const double low1 = std::min(m[1][0], m[1][1]);
  const double lower = std::max(low0, low1);
  const double upper = std::min(std::max(m[0][0], m[1][0]), std::max(m[0][1], m[1][1]));

  SolvedStrategy out;
  if (lower + 1e-12 >= upper) {
    // Saddle point: a pure action already secures the full value.
    const int a = low0 >= low1 ? 0 : 1;
    out.strategy.probs = {a == 0 ? 1.0 : 0.0, a == 0 ? 0.0 : 1.0};
    out.value = lower;
    return out;
  }
  // No saddle: mix to make the opponent's two columns equally (un)attractive.
  const double d = m[0][0] - m[0][1] - m[1][0] + m[1][1];
  double p = (m[1][1] - m[1][0]) / d;
  p = std::clamp(p, 0.0, 1.0);
  out.strategy.probs = {p, 1.0 - p};
  out.value = p * m[0][0] + (1.0 - p) * m[1][0];
  return out;
}

SolvedStrategy minimax_punishment(const Game& g, Player punisher) {
  const Player victim = other(punisher);
  // v[a][b]: victim's payoff when the punisher plays a and the victim b.
  Matrix v;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) v[a][b] = g.own_payoff(victim, b, a);

  const auto response_value = [&](double x0) {
    const double to_b0 = x0 * v[0][0] + (1.0 - x0) * v[1][0];
    const double to_b1 = x0 * v[0][1] + (1.0 - x0) * v[1][1];
    return std::max(to_b0, to_b1);
  };

  // The victim's best-response payoff is a max of two linear functions of
  // x0, so its minimum sits at an endpoint or at their crossing.
  double best_x = 0.0, best_v = response_value(0.0);
  for (double x0 : {1.0, (v[0][0] - v[0][1] - v[1][0] + v[1][1]) != 0.0
                             ? (v[1][1] - v[1][0]) / (v[0][0] - v[0][1] - v[1][0] + v[1][1])
                             : -1.0}) {
    if (x0 < 0.0 || x0 > 1.0) continue;
    const double val = response_value(x0);
    if (val < best_v - 1e-12) {
      best_v = val;
      best_x = x0;
    }
  }

  SolvedStrategy out;
  out.strategy.probs = {best_x, 1.0 - best_x};
  out.value = best_v;
  return out;
}

}  // namespace ehba
