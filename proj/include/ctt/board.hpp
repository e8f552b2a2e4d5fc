#ifndef CTT_BOARD_HPP
#define CTT_BOARD_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "ctt/bigint.hpp"
#include "ctt/errors.hpp"

namespace ctt {

using CellIndex = std::int32_t;

// Hard cap on board size so cell indices fit fixed-width integers.
inline constexpr std::int64_t kMaxCells = 1 << 20;

// Default cap on the (n+2)^d direction/offset encoding space scanned by
// line enumeration.
inline constexpr std::int64_t kDefaultEnumerationCap = 1'000'000;

struct BoardDims {
  int n = 1;  // side length
  int d = 1;  // dimension

  BoardDims() = default;
  BoardDims(int side, int dim) : n(side), d(dim) {
    if (n < 1 || d < 1) {
      throw invalid_dims_error("board dims require n >= 1 and d >= 1, got n=" +
                               std::to_string(n) + " d=" + std::to_string(d));
    }
    std::int64_t c = 1;
    for (int i = 0; i < d; ++i) {
      c *= n;
      if (c > kMaxCells) {
        throw invalid_dims_error("board " + std::to_string(n) + "^" +
                                 std::to_string(d) + " exceeds the cell cap of 2^20");
      }
    }
  }

  std::int64_t cell_count() const {
    std::int64_t c = 1;
    for (int i = 0; i < d; ++i) c *= n;
    return c;
  }

  // Number of gravity columns, n^(d-1).
  std::int64_t column_count() const { return cell_count() / n; }

  bool operator==(const BoardDims& o) const { return n == o.n && d == o.d; }
  bool operator!=(const BoardDims& o) const { return !(*this == o); }

  std::string to_string() const {
    return std::to_string(n) + "^" + std::to_string(d);
  }
};

// A board vertex as a 1-based coordinate tuple of length d.
struct Cell {
  std::vector<int> coords;

  Cell() = default;
  explicit Cell(std::vector<int> c) : coords(std::move(c)) {}
  Cell(std::initializer_list<int> c) : coords(c) {}

  bool operator==(const Cell& o) const { return coords == o.coords; }
  bool operator!=(const Cell& o) const { return coords != o.coords; }
  bool operator<(const Cell& o) const { return coords < o.coords; }
};

// The n cells sharing their first d-1 coordinates; the gravity axis is
// coordinate d.
struct ColumnId {
  std::vector<int> prefix;  // length d-1, possibly empty when d == 1

  ColumnId() = default;
  explicit ColumnId(std::vector<int> p) : prefix(std::move(p)) {}
  ColumnId(std::initializer_list<int> p) : prefix(p) {}

  bool operator==(const ColumnId& o) const { return prefix == o.prefix; }
  bool operator!=(const ColumnId& o) const { return prefix != o.prefix; }
  bool operator<(const ColumnId& o) const { return prefix < o.prefix; }
};

inline void check_cell(const BoardDims& dims, const Cell& cell) {
  if (static_cast<int>(cell.coords.size()) != dims.d) {
    throw invalid_cell_error("cell has " + std::to_string(cell.coords.size()) +
                             " coordinates, board is " + dims.to_string());
  }
  for (int x : cell.coords) {
    if (x < 1 || x > dims.n) {
      throw invalid_cell_error("coordinate " + std::to_string(x) +
                               " outside [1," + std::to_string(dims.n) + "]");
    }
  }
}

// Flat index with the last coordinate (the gravity axis) varying slowest,
// so a layer occupies a contiguous index range:
//   index = (x_d - 1) * n^(d-1) + ... + (x_2 - 1) * n + (x_1 - 1)
inline CellIndex cell_index(const BoardDims& dims, const Cell& cell) {
  check_cell(dims, cell);
  std::int64_t idx = 0;
  for (int l = dims.d - 1; l >= 0; --l) idx = idx * dims.n + (cell.coords[l] - 1);
  return static_cast<CellIndex>(idx);
}

inline Cell cell_at(const BoardDims& dims, CellIndex index) {
  if (index < 0 || index >= dims.cell_count()) {
    throw invalid_cell_error("flat index " + std::to_string(index) +
                             " outside [0," + std::to_string(dims.cell_count()) + ")");
  }
  Cell cell;
  cell.coords.resize(dims.d);
  std::int64_t rest = index;
  for (int l = 0; l < dims.d; ++l) {
    cell.coords[l] = static_cast<int>(rest % dims.n) + 1;
    rest /= dims.n;
  }
  return cell;
}

inline ColumnId column_of(const Cell& cell) {
  if (cell.coords.empty()) throw invalid_cell_error("empty cell");
  return ColumnId(std::vector<int>(cell.coords.begin(), cell.coords.end() - 1));
}

// Layer level = the gravity coordinate, in [1, n].
inline int layer_of(const Cell& cell) {
  if (cell.coords.empty()) throw invalid_cell_error("empty cell");
  return cell.coords.back();
}

// Columns are indexed exactly like cells of the (d-1)-dimensional layer
// board, so column_index(column_of(c)) == cell_index(c) % n^(d-1).
inline std::int32_t column_index(const BoardDims& dims, const ColumnId& col) {
  if (static_cast<int>(col.prefix.size()) != dims.d - 1) {
    throw invalid_cell_error("column prefix has wrong arity for " + dims.to_string());
  }
  std::int64_t idx = 0;
  for (int l = dims.d - 2; l >= 0; --l) {
    int x = col.prefix[l];
    if (x < 1 || x > dims.n) {
      throw invalid_cell_error("column coordinate " + std::to_string(x) + " out of range");
    }
    idx = idx * dims.n + (x - 1);
  }
  return static_cast<std::int32_t>(idx);
}

inline ColumnId column_at(const BoardDims& dims, std::int32_t col_idx) {
  ColumnId col;
  col.prefix.resize(dims.d - 1);
  std::int64_t rest = col_idx;
  for (int l = 0; l + 1 < dims.d; ++l) {
    col.prefix[l] = static_cast<int>(rest % dims.n) + 1;
    rest /= dims.n;
  }
  return col;
}

// Flat index of the cell in column `col_idx` at layer `layer`.
inline CellIndex column_cell_index(const BoardDims& dims, std::int32_t col_idx, int layer) {
  return static_cast<CellIndex>(static_cast<std::int64_t>(layer - 1) * dims.column_count() +
                                col_idx);
}

// A geometric line: n cells whose n x d coordinate matrix has every column
// an arithmetic progression with common difference -1, 0, or +1, not all 0.
// Canonical orientation: the first cell is lexicographically smaller than
// the last (ties on single-cell boards broken by direction sign).
struct GeometricLine {
  std::vector<Cell> cells;     // ordered, length n
  std::vector<int> direction;  // length d, entries in {-1, 0, +1}
};

// Exact line count, ((n+2)^d - n^d) / 2.
inline bigint line_count_formula(const BoardDims& dims) {
  return (big_pow(dims.n + 2, static_cast<unsigned>(dims.d)) -
          big_pow(dims.n, static_cast<unsigned>(dims.d))) /
         2;
}

// All geometric lines of a board in canonical orientation, stored as flat
// cell indices, sorted by canonical first cell (then direction), plus the
// cell -> lines-through-it incidence map.
class LineSet {
 public:
  struct Line {
    std::vector<CellIndex> cells;  // canonical order
    std::vector<std::int8_t> direction;
  };

  LineSet(const BoardDims& dims, std::int64_t enumeration_cap)
      : dims_(dims) {
    std::int64_t space = 1;
    for (int i = 0; i < dims.d; ++i) {
      space *= dims.n + 2;
      if (space > enumeration_cap) {
        throw resource_limit_error("line enumeration space (n+2)^d exceeds cap " +
                                   std::to_string(enumeration_cap));
      }
    }
    enumerate();
    build_incidence();
  }

  const BoardDims& dims() const { return dims_; }
  const std::vector<Line>& lines() const { return lines_; }
  std::size_t size() const { return lines_.size(); }

  // Line identifiers through each cell, ordered ascending.
  const std::vector<std::vector<std::int32_t>>& incidence() const { return incidence_; }

  GeometricLine materialize(std::size_t id) const {
    const Line& ln = lines_[id];
    GeometricLine g;
    g.cells.reserve(ln.cells.size());
    for (CellIndex ci : ln.cells) g.cells.push_back(cell_at(dims_, ci));
    g.direction.assign(ln.direction.begin(), ln.direction.end());
    return g;
  }

 private:
  // Per-axis choices per the ordering count: constant a in [n], ascending
  // (1..n), or descending (n..1). All (n+2)^d encodings are scanned, the n^d
  // all-constant ones discarded, and one representative kept per
  // orientation pair.
  void enumerate() {
    const int n = dims_.n;
    const int d = dims_.d;
    // choice per axis: 0..n-1 = constant value a+1, n = ascending, n+1 = descending
    std::vector<int> choice(d, 0);
    std::vector<int> first(d), last(d);
    std::vector<std::int8_t> dir(d);
    while (true) {
      bool degenerate = true;
      for (int l = 0; l < d; ++l) {
        if (choice[l] < n) {
          first[l] = last[l] = choice[l] + 1;
          dir[l] = 0;
        } else if (choice[l] == n) {
          first[l] = 1;
          last[l] = n;
          dir[l] = 1;
          degenerate = false;
        } else {
          first[l] = n;
          last[l] = 1;
          dir[l] = -1;
          degenerate = false;
        }
      }
      if (!degenerate && is_canonical(first, last, dir)) {
        Line ln;
        ln.direction = dir;
        ln.cells.reserve(n);
        for (int row = 0; row < n; ++row) {
          std::int64_t idx = 0;
          for (int l = d - 1; l >= 0; --l) {
            int coord = dir[l] == 0 ? first[l] : (dir[l] > 0 ? 1 + row : n - row);
            idx = idx * n + (coord - 1);
          }
          ln.cells.push_back(static_cast<CellIndex>(idx));
        }
        lines_.push_back(std::move(ln));
      }
      int l = 0;
      for (; l < d; ++l) {
        if (++choice[l] < n + 2) break;
        choice[l] = 0;
      }
      if (l == d) break;
    }
    // Sorted by canonical first cell in coordinate-tuple lex order (the same
    // order the orientation rule uses), ties broken by direction.
    const BoardDims dims = dims_;
    std::sort(lines_.begin(), lines_.end(), [&dims](const Line& a, const Line& b) {
      if (a.cells.front() != b.cells.front()) {
        return cell_at(dims, a.cells.front()).coords < cell_at(dims, b.cells.front()).coords;
      }
      return a.direction < b.direction;
    });
  }

  // Keeps the orientation whose first cell is lex-smaller (coordinate
  // tuples read x1 first); on single-cell boards first == last and the
  // direction with leading +1 wins.
  static bool is_canonical(const std::vector<int>& first, const std::vector<int>& last,
                           const std::vector<std::int8_t>& dir) {
    if (first != last) return first < last;
    for (std::int8_t s : dir) {
      if (s != 0) return s > 0;
    }
    return false;  // all-zero direction never reaches here
  }

  void build_incidence() {
    incidence_.assign(static_cast<std::size_t>(dims_.cell_count()), {});
    for (std::size_t id = 0; id < lines_.size(); ++id) {
      for (CellIndex ci : lines_[id].cells) {
        incidence_[static_cast<std::size_t>(ci)].push_back(static_cast<std::int32_t>(id));
      }
    }
  }

  BoardDims dims_;
  std::vector<Line> lines_;
  std::vector<std::vector<std::int32_t>> incidence_;
};

inline LineSet enumerate_lines(const BoardDims& dims,
                               std::int64_t enumeration_cap = kDefaultEnumerationCap) {
  return LineSet(dims, enumeration_cap);
}

}  // namespace ctt

#endif
