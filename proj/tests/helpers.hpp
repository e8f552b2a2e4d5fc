#ifndef CTT_TEST_HELPERS_HPP
#define CTT_TEST_HELPERS_HPP

#include <algorithm>
#include <cstdlib>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ctt/game.hpp"

namespace ctt_test {

// Independent line oracle: accepts a set of n cells iff some ordering of
// them forms an n x d matrix whose every coordinate column is an arithmetic
// progression with common difference -1, 0, or +1, not all zero. Checks all
// n! orderings; nothing here shares code with the library's enumeration.
inline bool is_line_cell_set(const ctt::BoardDims& dims,
                             std::vector<std::vector<int>> cells) {
  std::sort(cells.begin(), cells.end());
  do {
    bool ok = true;
    bool nondegenerate = false;
    for (int l = 0; l < dims.d && ok; ++l) {
      int diff = 0;
      for (std::size_t r = 0; r + 1 < cells.size(); ++r) {
        int step = cells[r + 1][static_cast<std::size_t>(l)] -
                   cells[r][static_cast<std::size_t>(l)];
        if (step < -1 || step > 1) {
          ok = false;
          break;
        }
        if (r == 0) {
          diff = step;
        } else if (step != diff) {
          ok = false;
          break;
        }
      }
      if (ok && diff != 0) nondegenerate = true;
    }
    if (cells.size() == 1) {
      // A single cell is trivially a (degenerate-direction) line only on
      // n = 1 boards, where every nonzero direction yields the same cell.
      return dims.n == 1;
    }
    if (ok && nondegenerate) return true;
  } while (std::next_permutation(cells.begin(), cells.end()));
  return false;
}

// All line cell sets of a board by exhaustive subset scan.
inline std::set<std::vector<std::vector<int>>> brute_force_line_sets(
    const ctt::BoardDims& dims) {
  const std::int64_t cells = dims.cell_count();
  const int n = dims.n;
  std::set<std::vector<std::vector<int>>> found;
  std::vector<int> comb(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) comb[static_cast<std::size_t>(i)] = i;
  while (true) {
    std::vector<std::vector<int>> subset;
    subset.reserve(static_cast<std::size_t>(n));
    for (int idx : comb) {
      subset.push_back(ctt::cell_at(dims, idx).coords);
    }
    if (is_line_cell_set(dims, subset)) {
      std::sort(subset.begin(), subset.end());
      found.insert(subset);
    }
    int k = n - 1;
    while (k >= 0 &&
           comb[static_cast<std::size_t>(k)] == static_cast<int>(cells) - n + k) {
      --k;
    }
    if (k < 0) break;
    ++comb[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < n; ++j) {
      comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return found;
}

// A uniformly random legal playout prefix of the requested length.
inline ctt::Play random_play(const ctt::BoardDims& dims, ctt::RestrictionMode mode,
                             std::size_t length, std::mt19937_64& rng) {
  ctt::Position pos(dims);
  ctt::Play play;
  for (std::size_t i = 0; i < length; ++i) {
    auto moves = ctt::available_moves(pos, mode);
    if (moves.empty()) break;
    const ctt::Cell& pick =
        moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
    play.moves.push_back(pick);
    pos = ctt::apply_move(pos, pick, mode);
  }
  return play;
}

inline std::string cli_path() {
  const char* env = std::getenv("CTT_CLI");
  return env != nullptr ? env : "./ctt";
}

}  // namespace ctt_test

#endif
