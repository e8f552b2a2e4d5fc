#ifndef CTT_SOLVER_HPP
#define CTT_SOLVER_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ctt/game.hpp"

namespace ctt {

// Exact value from the first player's perspective; total order
// SecondWin < Draw < FirstWin.
enum class GameValue : std::int8_t { SecondWin = -1, Draw = 0, FirstWin = 1 };

inline std::string game_value_name(GameValue v) {
  switch (v) {
    case GameValue::FirstWin: return "first_win";
    case GameValue::SecondWin: return "second_win";
    default: return "draw";
  }
}

struct SolverConfig {
  std::uint64_t node_cap = 100'000'000;
  int tt_bits = 20;          // transposition table entries = 2^tt_bits
  std::uint64_t seed = 1;    // seeds the per-(cell,color) hash keys
};

struct SolveResult {
  BoardDims dims;
  RestrictionMode mode = RestrictionMode::Gravity;
  GameValue value = GameValue::Draw;
  int plies_to_outcome = 0;  // moves until the game ends under optimal play
  Play principal_variation;
  std::uint64_t nodes_searched = 0;
  std::chrono::milliseconds elapsed{0};
  std::uint64_t seed = 0;
};

// Boards beyond this are out of reach for exact search regardless of caps.
inline constexpr std::int64_t kMaxSolveCells = 64;

namespace detail {

// Scores are side-to-move relative: +(kWinBase - end_ply) when the mover
// wins at total ply end_ply, the negation when the mover loses, 0 for a
// draw. Positions determine their own move count, so scores are absolute
// per position and transposition entries need no ply adjustment.
inline constexpr std::int32_t kWinBase = 1 << 21;
inline constexpr std::int32_t kScoreInf = std::numeric_limits<std::int32_t>::max() / 2;

struct TtEntry {
  std::uint64_t hash = 0;
  std::int32_t score = 0;
  std::uint8_t flag = 0;  // 0 empty, 1 exact, 2 lower bound, 3 upper bound
};

class SearchContext {
 public:
  SearchContext(const Position& pos, RestrictionMode mode, const LineSet& lines,
                const SolverConfig& config, bool use_tt)
      : dims_(pos.dims),
        mode_(mode),
        lines_(lines),
        config_(config),
        labels_(pos.labels),
        move_count_(pos.move_count),
        columns_(dims_.column_count()) {
    if (dims_.cell_count() > kMaxSolveCells) {
      throw resource_limit_error("board " + dims_.to_string() +
                                 " exceeds the exact-solver cell cap of " +
                                 std::to_string(kMaxSolveCells));
    }
    heights_.assign(static_cast<std::size_t>(columns_), 0);
    for (std::int64_t c = 0; c < columns_; ++c) {
      bool hole = false;
      for (int layer = 1; layer <= dims_.n; ++layer) {
        bool empty = labels_[static_cast<std::size_t>((layer - 1) * columns_ + c)] ==
                     CellState::Empty;
        if (empty) {
          hole = true;
        } else if (hole) {
          // Incremental move generation relies on prefix-filled columns.
          if (mode_ == RestrictionMode::Gravity) {
            throw precondition_error(
                "position is not gravity-reachable: a claimed cell floats above an "
                "empty one in column " + std::to_string(c));
          }
        } else {
          ++heights_[static_cast<std::size_t>(c)];
        }
      }
    }
    std::mt19937_64 rng(config.seed);
    keys_first_.resize(labels_.size());
    keys_second_.resize(labels_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      keys_first_[i] = rng();
      keys_second_[i] = rng();
    }
    side_key_ = rng();
    hash_ = 0;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i] == CellState::First) hash_ ^= keys_first_[i];
      if (labels_[i] == CellState::Second) hash_ ^= keys_second_[i];
    }
    if (to_move() == PlayerColor::Second) hash_ ^= side_key_;
    if (use_tt) tt_.assign(std::size_t{1} << config.tt_bits, TtEntry{});
  }

  PlayerColor to_move() const {
    return move_count_ % 2 == 0 ? PlayerColor::First : PlayerColor::Second;
  }
  int move_count() const { return move_count_; }
  std::uint64_t nodes() const { return nodes_; }
  const BoardDims& dims() const { return dims_; }

  // The winner already on the board, if any (arbitrary root positions).
  std::optional<PlayerColor> static_winner() const {
    Position pos(dims_);
    pos.labels = labels_;
    pos.move_count = move_count_;
    auto win = find_winning_line(pos, lines_);
    if (win) return win->second;
    return std::nullopt;
  }

  void legal_moves(std::vector<CellIndex>& out) const {
    out.clear();
    if (mode_ == RestrictionMode::Gravity) {
      for (std::int64_t c = 0; c < columns_; ++c) {
        int h = heights_[static_cast<std::size_t>(c)];
        if (h < dims_.n) out.push_back(static_cast<CellIndex>(h * columns_ + c));
      }
    } else {
      for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == CellState::Empty) out.push_back(static_cast<CellIndex>(i));
      }
    }
  }

  // Whether placing `color` at `cell` completes a line through it.
  bool completes_line(CellIndex cell, CellState color) const {
    for (std::int32_t id : lines_.incidence()[static_cast<std::size_t>(cell)]) {
      bool mono = true;
      for (CellIndex ci : lines_.lines()[static_cast<std::size_t>(id)].cells) {
        if (ci == cell) continue;
        if (labels_[static_cast<std::size_t>(ci)] != color) {
          mono = false;
          break;
        }
      }
      if (mono) return true;
    }
    return false;
  }

  void make(CellIndex cell) {
    CellState color = to_state(to_move());
    labels_[static_cast<std::size_t>(cell)] = color;
    hash_ ^= color == CellState::First ? keys_first_[static_cast<std::size_t>(cell)]
                                       : keys_second_[static_cast<std::size_t>(cell)];
    hash_ ^= side_key_;
    ++move_count_;
    if (mode_ == RestrictionMode::Gravity) {
      ++heights_[static_cast<std::size_t>(cell % columns_)];
    }
  }

  void unmake(CellIndex cell) {
    if (mode_ == RestrictionMode::Gravity) {
      --heights_[static_cast<std::size_t>(cell % columns_)];
    }
    --move_count_;
    hash_ ^= side_key_;
    CellState color = labels_[static_cast<std::size_t>(cell)];
    hash_ ^= color == CellState::First ? keys_first_[static_cast<std::size_t>(cell)]
                                       : keys_second_[static_cast<std::size_t>(cell)];
    labels_[static_cast<std::size_t>(cell)] = CellState::Empty;
  }

  // Plain minimax, no pruning, no memoization: the reference oracle.
  std::int32_t minimax() {
    count_node();
    std::vector<CellIndex> moves;
    legal_moves(moves);
    if (moves.empty()) return 0;
    std::int32_t best = -kScoreInf;
    CellState mover = to_state(to_move());
    for (CellIndex m : moves) {
      bool wins = completes_line(m, mover);
      make(m);
      std::int32_t score = wins ? kWinBase - move_count_ : -minimax();
      unmake(m);
      best = std::max(best, score);
    }
    return best;
  }

  std::int32_t alphabeta(std::int32_t alpha, std::int32_t beta) {
    count_node();
    TtEntry* slot = nullptr;
    if (!tt_.empty()) {
      slot = &tt_[static_cast<std::size_t>(hash_ & (tt_.size() - 1))];
      if (slot->flag != 0 && slot->hash == hash_) {
        if (slot->flag == 1) return slot->score;
        if (slot->flag == 2) alpha = std::max(alpha, slot->score);
        if (slot->flag == 3) beta = std::min(beta, slot->score);
        if (alpha >= beta) return slot->score;
      }
    }
    // Bound classification below is relative to the window the children
    // actually saw, i.e. after any probe adjustment.
    const std::int32_t orig_alpha = alpha;
    std::vector<CellIndex> moves;
    legal_moves(moves);
    if (moves.empty()) return 0;
    order_moves(moves);
    std::int32_t best = -kScoreInf;
    CellState mover = to_state(to_move());
    for (CellIndex m : moves) {
      bool wins = completes_line(m, mover);
      make(m);
      std::int32_t score = wins ? kWinBase - move_count_ : -alphabeta(-beta, -alpha);
      unmake(m);
      best = std::max(best, score);
      alpha = std::max(alpha, best);
      if (alpha >= beta) break;
    }
    if (slot != nullptr) {
      slot->hash = hash_;
      slot->score = best;
      slot->flag = best <= orig_alpha ? 3 : best >= beta ? 2 : 1;
    }
    return best;
  }

  // Exact score of each legal move from the current position, full window.
  // Full-window fail-soft search returns exact values, so the resulting
  // scores do not depend on table size or visit order.
  std::vector<std::pair<CellIndex, std::int32_t>> root_scores() {
    std::vector<CellIndex> moves;
    legal_moves(moves);
    order_moves(moves);
    std::vector<std::pair<CellIndex, std::int32_t>> out;
    out.reserve(moves.size());
    CellState mover = to_state(to_move());
    for (CellIndex m : moves) {
      bool wins = completes_line(m, mover);
      make(m);
      std::int32_t score = wins ? kWinBase - move_count_
                                : -alphabeta(-kScoreInf, kScoreInf);
      unmake(m);
      out.emplace_back(m, score);
    }
    return out;
  }

 private:
  // Immediate wins first, then ascending cell index; deterministic.
  void order_moves(std::vector<CellIndex>& moves) const {
    CellState mover = to_state(to_move());
    std::stable_partition(moves.begin(), moves.end(),
                          [&](CellIndex m) { return completes_line(m, mover); });
  }

  void count_node() {
    if (++nodes_ > config_.node_cap) {
      throw resource_limit_error("search exceeded the node cap of " +
                                     std::to_string(config_.node_cap),
                                 nodes_);
    }
  }

  BoardDims dims_;
  RestrictionMode mode_;
  const LineSet& lines_;
  SolverConfig config_;
  std::vector<CellState> labels_;
  int move_count_;
  std::int64_t columns_;
  std::vector<int> heights_;
  std::vector<std::uint64_t> keys_first_, keys_second_;
  std::uint64_t side_key_ = 0;
  std::uint64_t hash_ = 0;
  std::uint64_t nodes_ = 0;
  std::vector<TtEntry> tt_;
};

inline GameValue score_to_value(std::int32_t score, PlayerColor to_move) {
  GameValue mover_view = score > 0   ? GameValue::FirstWin
                         : score < 0 ? GameValue::SecondWin
                                     : GameValue::Draw;
  if (to_move == PlayerColor::Second) {
    mover_view = static_cast<GameValue>(-static_cast<std::int8_t>(mover_view));
  }
  return mover_view;
}

}  // namespace detail

// Full minimax with no pruning and no memoization; the reference oracle the
// optimized engine is tested against.
inline GameValue naive_solve(const Position& pos, RestrictionMode mode,
                             std::uint64_t node_cap = 100'000'000) {
  LineSet lines = enumerate_lines(pos.dims);
  SolverConfig config;
  config.node_cap = node_cap;
  detail::SearchContext ctx(pos, mode, lines, config, /*use_tt=*/false);
  if (auto winner = ctx.static_winner()) {
    return *winner == PlayerColor::First ? GameValue::FirstWin : GameValue::SecondWin;
  }
  std::vector<CellIndex> moves;
  ctx.legal_moves(moves);
  if (moves.empty()) return GameValue::Draw;
  return detail::score_to_value(ctx.minimax(), pos.to_move());
}

// Alpha-beta with a transposition table keyed on (labels, player-to-move).
// Among equal game values the engine prefers faster wins and slower losses;
// ties after that break toward the smallest cell index.
inline SolveResult solve(const Position& pos, RestrictionMode mode,
                         const SolverConfig& config = {}) {
  auto start = std::chrono::steady_clock::now();
  LineSet lines = enumerate_lines(pos.dims);
  SolveResult result;
  result.dims = pos.dims;
  result.mode = mode;
  result.seed = config.seed;

  detail::SearchContext ctx(pos, mode, lines, config, /*use_tt=*/true);
  if (auto winner = ctx.static_winner()) {
    result.value =
        *winner == PlayerColor::First ? GameValue::FirstWin : GameValue::SecondWin;
    result.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    return result;
  }

  // Walk the principal variation, re-scoring the legal moves at each step
  // against the shared (and by then warm) transposition table.
  bool root = true;
  while (true) {
    std::vector<CellIndex> moves;
    ctx.legal_moves(moves);
    if (moves.empty()) break;
    auto scored = ctx.root_scores();
    auto best = scored.front();
    for (const auto& cand : scored) {
      if (cand.second > best.second ||
          (cand.second == best.second && cand.first < best.first)) {
        best = cand;
      }
    }
    if (root) {
      result.value = detail::score_to_value(best.second, ctx.to_move());
      root = false;
    }
    result.principal_variation.moves.push_back(cell_at(pos.dims, best.first));
    bool wins = ctx.completes_line(best.first, to_state(ctx.to_move()));
    ctx.make(best.first);
    if (wins) break;
  }
  result.plies_to_outcome = ctx.move_count() - pos.move_count;
  result.nodes_searched = ctx.nodes();
  result.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  return result;
}

// A move achieving the position's game value (fastest win / slowest loss,
// then smallest cell index).
inline Cell best_move(const Position& pos, RestrictionMode mode,
                      const SolverConfig& config = {}) {
  LineSet lines = enumerate_lines(pos.dims);
  detail::SearchContext ctx(pos, mode, lines, config, /*use_tt=*/true);
  if (ctx.static_winner()) {
    throw precondition_error("position is already decided");
  }
  std::vector<CellIndex> moves;
  ctx.legal_moves(moves);
  if (moves.empty()) {
    throw precondition_error("no legal move on a full board");
  }
  auto scored = ctx.root_scores();
  auto best = scored.front();
  for (const auto& cand : scored) {
    if (cand.second > best.second ||
        (cand.second == best.second && cand.first < best.first)) {
      best = cand;
    }
  }
  return cell_at(pos.dims, best.first);
}

}  // namespace ctt

#endif
