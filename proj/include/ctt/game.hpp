#ifndef CTT_GAME_HPP
#define CTT_GAME_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctt/board.hpp"
#include "ctt/errors.hpp"

namespace ctt {

enum class PlayerColor : std::uint8_t { First, Second };  // "X" moves on odd move numbers

inline PlayerColor opponent(PlayerColor c) {
  return c == PlayerColor::First ? PlayerColor::Second : PlayerColor::First;
}

inline char color_char(PlayerColor c) { return c == PlayerColor::First ? 'X' : 'O'; }

enum class CellState : std::uint8_t { Empty, First, Second };

inline CellState to_state(PlayerColor c) {
  return c == PlayerColor::First ? CellState::First : CellState::Second;
}

enum class RestrictionMode : std::uint8_t { Unrestricted, Gravity };

inline std::string mode_name(RestrictionMode m) {
  return m == RestrictionMode::Gravity ? "c2t" : "3t";
}

// A partial 2-labeling of the board with move parity. Equality and hashing
// are on (labels, player-to-move); move history is not retained.
struct Position {
  BoardDims dims;
  std::vector<CellState> labels;
  int move_count = 0;

  Position() = default;
  explicit Position(const BoardDims& bd)
      : dims(bd), labels(static_cast<std::size_t>(bd.cell_count()), CellState::Empty) {}

  PlayerColor to_move() const {
    return move_count % 2 == 0 ? PlayerColor::First : PlayerColor::Second;
  }

  CellState at(CellIndex i) const { return labels[static_cast<std::size_t>(i)]; }

  bool operator==(const Position& o) const {
    return dims == o.dims && labels == o.labels;
  }

  // Flat string over {'.', 'X', 'O'} in cell_index order.
  std::string label_string() const {
    std::string s;
    s.reserve(labels.size());
    for (CellState st : labels) {
      s.push_back(st == CellState::Empty ? '.' : st == CellState::First ? 'X' : 'O');
    }
    return s;
  }

  // "<n>^<d>:<labels>" with the flat label string in cell_index order.
  std::string to_string() const { return dims.to_string() + ":" + label_string(); }

  static Position from_labels(const BoardDims& bd, const std::string& flat) {
    if (static_cast<std::int64_t>(flat.size()) != bd.cell_count()) {
      throw invalid_cell_error("label string length " + std::to_string(flat.size()) +
                               " does not match board " + bd.to_string());
    }
    Position pos(bd);
    int firsts = 0, seconds = 0;
    for (std::size_t i = 0; i < flat.size(); ++i) {
      switch (flat[i]) {
        case '.': break;
        case 'X': pos.labels[i] = CellState::First; ++firsts; break;
        case 'O': pos.labels[i] = CellState::Second; ++seconds; break;
        default:
          throw invalid_cell_error(std::string("bad label character '") + flat[i] + "'");
      }
    }
    if (firsts - seconds != 0 && firsts - seconds != 1) {
      throw precondition_error("label counts violate move parity: X=" +
                               std::to_string(firsts) + " O=" + std::to_string(seconds));
    }
    pos.move_count = firsts + seconds;
    return pos;
  }
};

// A full 2-coloring of the board (no empty cells).
struct Coloring {
  BoardDims dims;
  std::vector<PlayerColor> labels;

  Coloring() = default;
  explicit Coloring(const BoardDims& bd)
      : dims(bd), labels(static_cast<std::size_t>(bd.cell_count()), PlayerColor::First) {}

  PlayerColor at(CellIndex i) const { return labels[static_cast<std::size_t>(i)]; }

  bool operator==(const Coloring& o) const { return dims == o.dims && labels == o.labels; }
  bool operator<(const Coloring& o) const { return labels < o.labels; }

  std::string label_string() const {
    std::string s;
    s.reserve(labels.size());
    for (PlayerColor c : labels) s.push_back(color_char(c));
    return s;
  }

  std::string to_string() const { return dims.to_string() + ":" + label_string(); }

  static Coloring from_labels(const BoardDims& bd, const std::string& flat) {
    if (static_cast<std::int64_t>(flat.size()) != bd.cell_count()) {
      throw invalid_cell_error("coloring string length does not match board " + bd.to_string());
    }
    Coloring col(bd);
    for (std::size_t i = 0; i < flat.size(); ++i) {
      if (flat[i] == 'X') {
        col.labels[i] = PlayerColor::First;
      } else if (flat[i] == 'O') {
        col.labels[i] = PlayerColor::Second;
      } else {
        throw invalid_cell_error(std::string("bad coloring character '") + flat[i] + "'");
      }
    }
    return col;
  }
};

// An ordered move sequence.
struct Play {
  std::vector<Cell> moves;

  Play() = default;
  explicit Play(std::vector<Cell> m) : moves(std::move(m)) {}

  std::size_t size() const { return moves.size(); }
  bool operator==(const Play& o) const { return moves == o.moves; }
};

// Lowest empty layer of each column, 0-based count of filled-from-the-bottom
// cells; n means the column is full. Meaningful for gravity-reachable
// positions; for arbitrary positions the availability rule below applies.
inline std::int32_t lowest_empty_layer(const Position& pos, std::int32_t col_idx) {
  const std::int64_t cols = pos.dims.column_count();
  for (int layer = 1; layer <= pos.dims.n; ++layer) {
    CellIndex ci = static_cast<CellIndex>(static_cast<std::int64_t>(layer - 1) * cols + col_idx);
    if (pos.at(ci) == CellState::Empty) return layer;
  }
  return 0;  // column full
}

// The availability set: all empty cells in Unrestricted mode; in Gravity
// mode, for each column the single unclaimed cell of least layer level.
inline std::vector<Cell> available_moves(const Position& pos, RestrictionMode mode) {
  std::vector<Cell> out;
  if (mode == RestrictionMode::Unrestricted) {
    for (CellIndex i = 0; i < pos.dims.cell_count(); ++i) {
      if (pos.at(i) == CellState::Empty) out.push_back(cell_at(pos.dims, i));
    }
    return out;
  }
  const std::int64_t cols = pos.dims.column_count();
  for (std::int32_t c = 0; c < cols; ++c) {
    int layer = lowest_empty_layer(pos, c);
    if (layer > 0) out.push_back(cell_at(pos.dims, column_cell_index(pos.dims, c, layer)));
  }
  return out;
}

// Classifies a proposed move without applying it. Throws illegal_move_error
// with a typed kind on rejection.
inline CellIndex check_move(const Position& pos, const Cell& cell, RestrictionMode mode) {
  CellIndex idx;
  try {
    idx = cell_index(pos.dims, cell);
  } catch (const invalid_cell_error& e) {
    throw illegal_move_error(illegal_move_error::kind::out_of_range, e.what());
  }
  if (pos.at(idx) != CellState::Empty) {
    throw illegal_move_error(illegal_move_error::kind::occupied,
                             "cell already claimed at index " + std::to_string(idx));
  }
  if (mode == RestrictionMode::Gravity) {
    std::int32_t col = static_cast<std::int32_t>(idx % pos.dims.column_count());
    int lowest = lowest_empty_layer(pos, col);
    if (layer_of(cell) != lowest) {
      throw illegal_move_error(illegal_move_error::kind::floating,
                               "gravity requires layer " + std::to_string(lowest) +
                                   " in this column, got " + std::to_string(layer_of(cell)));
    }
  }
  return idx;
}

inline Position apply_move(const Position& pos, const Cell& cell, RestrictionMode mode) {
  CellIndex idx = check_move(pos, cell, mode);
  Position next = pos;
  next.labels[static_cast<std::size_t>(idx)] = to_state(next.to_move());
  ++next.move_count;
  return next;
}

struct PlayValidation {
  bool valid = true;
  std::optional<std::size_t> violation_index;
  std::string reason;

  explicit operator bool() const { return valid; }
};

// Replays the sequence from the empty board; false with the index of the
// first violating move if any step leaves the availability set.
inline PlayValidation is_play_valid(const Play& play, const BoardDims& dims,
                                    RestrictionMode mode) {
  Position pos(dims);
  for (std::size_t i = 0; i < play.moves.size(); ++i) {
    try {
      pos = apply_move(pos, play.moves[i], mode);
    } catch (const illegal_move_error& e) {
      return PlayValidation{false, i, e.what()};
    }
  }
  return PlayValidation{};
}

inline std::vector<ColumnId> play_as_columns(const Play& play) {
  std::vector<ColumnId> cols;
  cols.reserve(play.moves.size());
  for (const Cell& c : play.moves) cols.push_back(column_of(c));
  return cols;
}

// The Lemma-1 bijection: each column choice claims that column's lowest
// unclaimed cell.
inline Play columns_as_play(const std::vector<ColumnId>& cols, const BoardDims& dims) {
  std::vector<int> height(static_cast<std::size_t>(dims.column_count()), 0);
  Play play;
  play.moves.reserve(cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) {
    std::int32_t ci = column_index(dims, cols[i]);
    if (height[static_cast<std::size_t>(ci)] >= dims.n) {
      throw overfull_column_error("column chosen more than n times at position " +
                                  std::to_string(i));
    }
    int layer = ++height[static_cast<std::size_t>(ci)];
    play.moves.push_back(cell_at(dims, column_cell_index(dims, ci, layer)));
  }
  return play;
}

// The line fully labeled by one color with the smallest identifier, if any.
inline std::optional<std::pair<std::int32_t, PlayerColor>> find_winning_line(
    const Position& pos, const LineSet& lines) {
  for (std::size_t id = 0; id < lines.size(); ++id) {
    const auto& cells = lines.lines()[id].cells;
    CellState first = pos.at(cells.front());
    if (first == CellState::Empty) continue;
    bool mono = true;
    for (std::size_t k = 1; k < cells.size(); ++k) {
      if (pos.at(cells[k]) != first) {
        mono = false;
        break;
      }
    }
    if (mono) {
      return std::make_pair(static_cast<std::int32_t>(id),
                            first == CellState::First ? PlayerColor::First
                                                      : PlayerColor::Second);
    }
  }
  return std::nullopt;
}

inline std::optional<std::pair<std::int32_t, PlayerColor>> find_winning_line(
    const Position& pos) {
  return find_winning_line(pos, enumerate_lines(pos.dims));
}

// The final coloring of a complete play: odd-numbered moves (1st, 3rd, ...)
// carry First's color.
inline Coloring terminal_position(const Play& play, const BoardDims& dims) {
  if (static_cast<std::int64_t>(play.size()) != dims.cell_count()) {
    throw precondition_error("play has " + std::to_string(play.size()) +
                             " moves, full board needs " + std::to_string(dims.cell_count()));
  }
  Coloring col(dims);
  std::vector<bool> seen(static_cast<std::size_t>(dims.cell_count()), false);
  for (std::size_t i = 0; i < play.moves.size(); ++i) {
    CellIndex idx = cell_index(dims, play.moves[i]);
    if (seen[static_cast<std::size_t>(idx)]) {
      throw precondition_error("repeated cell at move " + std::to_string(i));
    }
    seen[static_cast<std::size_t>(idx)] = true;
    col.labels[static_cast<std::size_t>(idx)] =
        i % 2 == 0 ? PlayerColor::First : PlayerColor::Second;
  }
  return col;
}

}  // namespace ctt

#endif
