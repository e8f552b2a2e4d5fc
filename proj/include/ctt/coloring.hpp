#ifndef CTT_COLORING_HPP
#define CTT_COLORING_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ctt/counting.hpp"
#include "ctt/game.hpp"

namespace ctt {

// ---------------------------------------------------------------------------
// Properness and basic coloring operations
// ---------------------------------------------------------------------------

inline bool is_halving(const Coloring& coloring) {
  std::int64_t firsts = std::count(coloring.labels.begin(), coloring.labels.end(),
                                   PlayerColor::First);
  return firsts == (coloring.dims.cell_count() + 1) / 2;
}

// Identifiers of all monochromatic lines; empty means proper.
inline std::vector<std::int32_t> monochromatic_lines(const Coloring& coloring,
                                                     const LineSet& lines) {
  std::vector<std::int32_t> mono;
  for (std::size_t id = 0; id < lines.size(); ++id) {
    const auto& cells = lines.lines()[id].cells;
    PlayerColor first = coloring.at(cells.front());
    bool all_equal = true;
    for (std::size_t k = 1; k < cells.size(); ++k) {
      if (coloring.at(cells[k]) != first) {
        all_equal = false;
        break;
      }
    }
    if (all_equal) mono.push_back(static_cast<std::int32_t>(id));
  }
  return mono;
}

inline bool is_proper(const Coloring& coloring, const LineSet& lines) {
  return monochromatic_lines(coloring, lines).empty();
}

inline Coloring color_flip(const Coloring& coloring) {
  Coloring out = coloring;
  for (auto& c : out.labels) c = opponent(c);
  return out;
}

// ---------------------------------------------------------------------------
// Layered colorings
// ---------------------------------------------------------------------------

enum class LayerChoice : std::uint8_t { Base, Flipped };

// f : layer level -> {Base, Flipped}, with exactly ceil(n/2) Base layers
// and floor(n/2) Flipped layers.
struct LayerAssignment {
  std::vector<LayerChoice> f;  // index 0 is layer 1

  int size() const { return static_cast<int>(f.size()); }
  LayerChoice at_layer(int layer) const { return f[static_cast<std::size_t>(layer - 1)]; }

  bool counts_valid() const {
    int n = size();
    auto bases = std::count(f.begin(), f.end(), LayerChoice::Base);
    return bases == (n + 1) / 2;
  }
};

inline void check_layer_inputs(const Coloring& layer_coloring, const LayerAssignment& f) {
  const int n = layer_coloring.dims.n;
  if (f.size() != n) {
    throw precondition_error("assignment covers " + std::to_string(f.size()) +
                             " layers, board has " + std::to_string(n));
  }
  if (!f.counts_valid()) {
    throw precondition_error("assignment needs ceil(n/2) Base and floor(n/2) Flipped layers");
  }
  if (!is_halving(layer_coloring)) {
    throw precondition_error("layer coloring must be halving");
  }
}

// The coloring of [n]^d whose layer i is C when f(i) = Base and the
// color-flip of C when f(i) = Flipped.
inline Coloring layered_coloring(const Coloring& layer_coloring, const LayerAssignment& f) {
  check_layer_inputs(layer_coloring, f);
  BoardDims full(layer_coloring.dims.n, layer_coloring.dims.d + 1);
  const std::int64_t cols = full.column_count();
  Coloring out(full);
  for (int layer = 1; layer <= full.n; ++layer) {
    bool flip = f.at_layer(layer) == LayerChoice::Flipped;
    for (std::int64_t c = 0; c < cols; ++c) {
      PlayerColor base = layer_coloring.labels[static_cast<std::size_t>(c)];
      out.labels[static_cast<std::size_t>((layer - 1) * cols + c)] =
          flip ? opponent(base) : base;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// The layered-coloring play construction
// ---------------------------------------------------------------------------

namespace detail {

// Column indices ordered by prefix-tuple lex order (the layer board's
// coordinate order, x1 most significant).
inline std::vector<std::int32_t> columns_in_lex_order(const BoardDims& full) {
  std::vector<std::int32_t> order(static_cast<std::size_t>(full.column_count()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&full](std::int32_t a, std::int32_t b) {
    return column_at(full, a).prefix < column_at(full, b).prefix;
  });
  return order;
}

}  // namespace detail

// Builds a full gravity-valid play whose terminal position equals
// layered_coloring(C, f). Layers are filled bottom-up in opposite-colored
// pairs; for odd n the single-cell surplus of each layer is paired with an
// opposite-colored cell directly above it in a fresh column, and the one
// cell left at the top is the first player's final move.
inline Play construct_c2t_play_for_layered(const Coloring& layer_coloring,
                                           const LayerAssignment& f) {
  check_layer_inputs(layer_coloring, f);
  const BoardDims full(layer_coloring.dims.n, layer_coloring.dims.d + 1);
  const int n = full.n;
  const std::int64_t cols = full.column_count();

  if (n % 2 == 1) {
    // Column-pairing slack for the odd case: floor(n^(d-1)/2) - ceil(n/2)
    // must exceed the worst-case surplus ceil(n/2).
    std::int64_t slack = cols / 2 - (n + 1) / 2;
    if (slack <= (n + 1) / 2) {
      throw precondition_error("board " + full.to_string() +
                               " too small for the odd-n layered construction: slack " +
                               std::to_string(slack) + " must exceed " +
                               std::to_string((n + 1) / 2));
    }
  }

  const std::vector<std::int32_t> lex = detail::columns_in_lex_order(full);
  std::vector<int> height(static_cast<std::size_t>(cols), 0);
  std::vector<CellIndex> moves;
  moves.reserve(static_cast<std::size_t>(full.cell_count()));

  auto claim = [&](std::int32_t col) {
    int layer = ++height[static_cast<std::size_t>(col)];
    moves.push_back(column_cell_index(full, col, layer));
  };
  auto target_color = [&](std::int32_t col, int layer) {
    PlayerColor base = layer_coloring.labels[static_cast<std::size_t>(col)];
    return f.at_layer(layer) == LayerChoice::Flipped ? opponent(base) : base;
  };

  std::vector<std::int32_t> deficit;  // columns whose previous-layer cell is unclaimed
  PlayerColor deficit_color = PlayerColor::First;

  for (int layer = 1; layer <= n; ++layer) {
    // Pair each carried-over cell with an opposite-colored cell one layer
    // up, in a column untouched by the deficit set.
    if (!deficit.empty()) {
      std::vector<std::int32_t> partners;
      for (std::int32_t c : lex) {
        if (partners.size() == deficit.size()) break;
        if (height[static_cast<std::size_t>(c)] != layer - 1) continue;
        if (std::find(deficit.begin(), deficit.end(), c) != deficit.end()) continue;
        if (target_color(c, layer) == deficit_color) continue;
        partners.push_back(c);
      }
      if (partners.size() != deficit.size()) {
        throw error("layered-play pairing failed; slack precondition should prevent this");
      }
      for (std::size_t i = 0; i < deficit.size(); ++i) {
        if (deficit_color == PlayerColor::First) {
          claim(deficit[i]);
          claim(partners[i]);
        } else {
          claim(partners[i]);
          claim(deficit[i]);
        }
      }
    }

    // Pair off the rest of the layer in lex order; the surplus class (if
    // any) is carried to the next layer.
    std::vector<std::int32_t> firsts, seconds;
    for (std::int32_t c : lex) {
      if (height[static_cast<std::size_t>(c)] != layer - 1) continue;
      (target_color(c, layer) == PlayerColor::First ? firsts : seconds).push_back(c);
    }
    std::size_t paired = std::min(firsts.size(), seconds.size());
    for (std::size_t i = 0; i < paired; ++i) {
      claim(firsts[i]);
      claim(seconds[i]);
    }
    deficit.clear();
    if (firsts.size() > paired) {
      deficit.assign(firsts.begin() + static_cast<std::ptrdiff_t>(paired), firsts.end());
      deficit_color = PlayerColor::First;
    } else if (seconds.size() > paired) {
      deficit.assign(seconds.begin() + static_cast<std::ptrdiff_t>(paired), seconds.end());
      deficit_color = PlayerColor::Second;
    }
  }

  if (!deficit.empty()) {
    if (deficit.size() != 1 || deficit_color != PlayerColor::First) {
      throw error("layered-play construction ended with an unexpected surplus");
    }
    claim(deficit.front());  // the first player's final move
  }

  Play play;
  play.moves.reserve(moves.size());
  for (CellIndex ci : moves) play.moves.push_back(cell_at(full, ci));
  return play;
}

// ---------------------------------------------------------------------------
// Cross-layer lines and the greedy layer assignment
// ---------------------------------------------------------------------------

inline GeometricLine materialize_line(const BoardDims& dims, const LineSet::Line& line) {
  GeometricLine g;
  g.cells.reserve(line.cells.size());
  for (CellIndex ci : line.cells) g.cells.push_back(cell_at(dims, ci));
  g.direction.assign(line.direction.begin(), line.direction.end());
  return g;
}

// The non-column lines whose direction has vertical component +-1, each
// reoriented so that cell l sits in layer l. For d >= 2 there are exactly
// (n+2)^(d-1) - n^(d-1) of them; for d = 1 the single full-board line is
// returned (there is no separate column bookkeeping in one dimension).
inline std::vector<LineSet::Line> cross_layer_lines(
    const BoardDims& dims, std::int64_t enumeration_cap = kDefaultEnumerationCap) {
  LineSet all = enumerate_lines(dims, enumeration_cap);
  std::vector<LineSet::Line> out;
  for (const auto& line : all.lines()) {
    if (line.direction.back() == 0) continue;
    if (dims.d > 1) {
      bool column = std::all_of(line.direction.begin(), line.direction.end() - 1,
                                [](std::int8_t s) { return s == 0; });
      if (column) continue;
    }
    LineSet::Line oriented = line;
    if (oriented.direction.back() < 0) {
      std::reverse(oriented.cells.begin(), oriented.cells.end());
      for (auto& s : oriented.direction) s = static_cast<std::int8_t>(-s);
    }
    out.push_back(std::move(oriented));
  }
  return out;
}

enum class GreedyChoice : std::uint8_t { Repeat, Flip };

struct GreedyStep {
  int layer = 0;  // the layer being colored
  std::uint64_t k_before = 0;
  std::uint64_t x = 0;  // survivors if this layer repeats the previous one
  std::uint64_t y = 0;  // survivors if this layer flips the previous one
  GreedyChoice choice = GreedyChoice::Repeat;
  std::uint64_t k_after = 0;
};

using GreedyTrace = std::vector<GreedyStep>;

struct GreedyResult {
  bool success = false;
  std::optional<LayerAssignment> assignment;
  GreedyTrace trace;
  std::optional<Coloring> coloring;
  std::string failure_reason;
};

// Theorem-5 style assignment search: layer 1 is anchored, each later layer
// repeats or flips its predecessor so as to kill the larger half of the
// still-monochromatic cross-layer lines, and the layers after the survivor
// count reaches zero are padded to meet the Base/Flipped quota. The repeat
// vs flip decisions are color-symmetric, so a quota failure with the Base
// anchor is retried with the Flipped anchor before giving up.
inline GreedyResult greedy_layer_assignment(const Coloring& layer_coloring) {
  const BoardDims layer_dims = layer_coloring.dims;
  const BoardDims full(layer_dims.n, layer_dims.d + 1);
  const int n = full.n;
  const std::int64_t cols = full.column_count();

  if (!is_halving(layer_coloring)) {
    throw precondition_error("greedy assignment requires a halving layer coloring");
  }
  {
    LineSet layer_lines = enumerate_lines(layer_dims);
    if (!is_proper(layer_coloring, layer_lines)) {
      throw precondition_error("greedy assignment requires a proper layer coloring");
    }
  }

  // Column index of each cross-layer line's cell in each layer.
  std::vector<LineSet::Line> cross = cross_layer_lines(full);
  std::vector<std::vector<std::int32_t>> line_col(cross.size());
  for (std::size_t j = 0; j < cross.size(); ++j) {
    line_col[j].reserve(static_cast<std::size_t>(n));
    for (CellIndex ci : cross[j].cells) {
      line_col[j].push_back(static_cast<std::int32_t>(ci % cols));
    }
  }
  auto base_color = [&](std::size_t j, int layer) {
    return layer_coloring.labels[static_cast<std::size_t>(
        line_col[j][static_cast<std::size_t>(layer - 1)])];
  };

  GreedyResult result;
  std::vector<std::size_t> alive(cross.size());
  std::iota(alive.begin(), alive.end(), 0);
  std::vector<GreedyChoice> decisions;  // decision for layers 2..q
  int last_layer = 1;
  while (!alive.empty() && last_layer < n) {
    int layer = last_layer + 1;
    std::uint64_t x = 0;
    for (std::size_t j : alive) {
      if (base_color(j, layer) == base_color(j, layer - 1)) ++x;
    }
    std::uint64_t k = alive.size();
    std::uint64_t y = k - x;
    GreedyChoice choice = x > y ? GreedyChoice::Flip : GreedyChoice::Repeat;
    std::vector<std::size_t> next;
    for (std::size_t j : alive) {
      bool same = base_color(j, layer) == base_color(j, layer - 1);
      if (same == (choice == GreedyChoice::Repeat)) next.push_back(j);
    }
    result.trace.push_back(GreedyStep{layer, k, x, y, choice,
                                      static_cast<std::uint64_t>(next.size())});
    alive = std::move(next);
    decisions.push_back(choice);
    last_layer = layer;
  }

  if (!alive.empty()) {
    result.failure_reason = std::to_string(alive.size()) +
                            " cross-layer lines remain monochromatic after all layers";
    return result;
  }

  const int base_quota = (n + 1) / 2;
  const int flip_quota = n / 2;
  for (LayerChoice anchor : {LayerChoice::Base, LayerChoice::Flipped}) {
    std::vector<LayerChoice> f;
    f.reserve(static_cast<std::size_t>(n));
    f.push_back(anchor);
    for (GreedyChoice d : decisions) {
      LayerChoice prev = f.back();
      f.push_back(d == GreedyChoice::Repeat
                      ? prev
                      : (prev == LayerChoice::Base ? LayerChoice::Flipped : LayerChoice::Base));
    }
    int base_used = static_cast<int>(std::count(f.begin(), f.end(), LayerChoice::Base));
    int flip_used = static_cast<int>(f.size()) - base_used;
    if (base_used > base_quota || flip_used > flip_quota) continue;
    while (static_cast<int>(f.size()) < n) {
      f.push_back(base_used < base_quota ? LayerChoice::Base : LayerChoice::Flipped);
      if (f.back() == LayerChoice::Base) {
        ++base_used;
      } else {
        ++flip_used;
      }
    }
    LayerAssignment assignment{std::move(f)};
    Coloring full_coloring = layered_coloring(layer_coloring, assignment);
    LineSet full_lines = enumerate_lines(full);
    if (!is_proper(full_coloring, full_lines)) {
      throw error("greedy assembly produced an improper coloring");
    }
    result.success = true;
    result.assignment = std::move(assignment);
    result.coloring = std::move(full_coloring);
    return result;
  }

  result.failure_reason = "greedy prefix cannot meet the ceil(n/2) Base / floor(n/2) "
                          "Flipped quota under either anchor";
  return result;
}

// ---------------------------------------------------------------------------
// Hales-Jewett variant searches
// ---------------------------------------------------------------------------

enum class HjVariant : std::uint8_t { All, Halving, C2TReachable };

inline std::string variant_name(HjVariant v) {
  switch (v) {
    case HjVariant::All: return "all";
    case HjVariant::Halving: return "halving";
    default: return "c2t";
  }
}

struct HjSearchResult {
  bool proper_exists = false;
  std::optional<Coloring> witness;  // first proper coloring in canonical order
  bigint space;                     // size of the searched coloring class
};

namespace detail {

// Bitmask properness test: bit i of `c` is cell i's color. A line is
// monochromatic exactly when the restriction of c to its mask is empty or
// full.
inline bool proper_mask(std::uint64_t c, const std::vector<std::uint64_t>& line_masks) {
  for (std::uint64_t m : line_masks) {
    std::uint64_t r = c & m;
    if (r == 0 || r == m) return false;
  }
  return true;
}

inline Coloring coloring_from_mask(const BoardDims& dims, std::uint64_t c) {
  Coloring col(dims);
  for (std::int64_t i = 0; i < dims.cell_count(); ++i) {
    col.labels[static_cast<std::size_t>(i)] =
        (c >> i) & 1u ? PlayerColor::Second : PlayerColor::First;
  }
  return col;
}

}  // namespace detail

// Exhaustively decides whether a proper coloring exists in the given class:
// every coloring, every halving coloring, or every gravity-reachable
// terminal coloring. The witness is the first proper coloring in canonical
// order (mask order for All, combination order for Halving, label-lex order
// for C2TReachable).
inline HjSearchResult hj_variant_search(int n, int d, HjVariant variant, std::uint64_t cap,
                                        int threads = 1) {
  BoardDims dims(n, d);
  HjSearchResult result;

  if (variant == HjVariant::C2TReachable) {
    std::vector<Coloring> tps = enumerate_tp(dims, RestrictionMode::Gravity, cap, threads);
    result.space = static_cast<std::int64_t>(tps.size());
    LineSet lines = enumerate_lines(dims);
    for (const Coloring& col : tps) {
      if (is_proper(col, lines)) {
        result.proper_exists = true;
        result.witness = col;
        break;
      }
    }
    return result;
  }

  const std::int64_t cells = dims.cell_count();
  LineSet lines = enumerate_lines(dims);

  if (variant == HjVariant::Halving) {
    result.space = tp_count_formula(dims);
    detail::checked_cap_from_formula(result.space, cap, "halving-coloring search");
    for (const Coloring& col : enumerate_tp(dims, RestrictionMode::Unrestricted, cap)) {
      if (is_proper(col, lines)) {
        result.proper_exists = true;
        result.witness = col;
        break;
      }
    }
    return result;
  }

  result.space = big_pow(2, static_cast<unsigned>(cells));
  detail::checked_cap_from_formula(result.space, cap, "full coloring search");
  std::vector<std::uint64_t> masks;
  masks.reserve(lines.size());
  for (const auto& line : lines.lines()) {
    std::uint64_t m = 0;
    for (CellIndex ci : line.cells) m |= std::uint64_t{1} << ci;
    masks.push_back(m);
  }
  const std::uint64_t total = std::uint64_t{1} << cells;

  auto scan = [&](std::uint64_t lo, std::uint64_t hi) -> std::optional<std::uint64_t> {
    for (std::uint64_t c = lo; c < hi; ++c) {
      if (detail::proper_mask(c, masks)) return c;
    }
    return std::nullopt;
  };

  std::optional<std::uint64_t> found;
  if (threads <= 1 || total < 1024) {
    found = scan(0, total);
  } else {
    int workers = threads;
    std::vector<std::future<std::optional<std::uint64_t>>> futs;
    for (int w = 0; w < workers; ++w) {
      std::uint64_t lo = total / static_cast<unsigned>(workers) * static_cast<unsigned>(w);
      std::uint64_t hi = w + 1 == workers
                             ? total
                             : total / static_cast<unsigned>(workers) *
                                   static_cast<unsigned>(w + 1);
      futs.push_back(std::async(std::launch::async, scan, lo, hi));
    }
    for (auto& f : futs) {
      auto part = f.get();
      if (part && (!found || *part < *found)) found = part;
    }
  }
  if (found) {
    result.proper_exists = true;
    result.witness = detail::coloring_from_mask(dims, *found);
  }
  return result;
}

// Advisory lower bound on the gravity Hales-Jewett number,
// (n - 6) / (4 * log2(n)); undefined at n = 1 where the denominator is 0.
struct HjLowerBound {
  bool applicable = false;
  std::string symbolic;
  double value = 0.0;
};

inline HjLowerBound hj_c2t_lower_bound(int n) {
  if (n < 1) throw precondition_error("side length must be >= 1");
  HjLowerBound out;
  out.symbolic = "(" + std::to_string(n) + "-6)/(4*log2(" + std::to_string(n) + "))";
  if (n == 1) return out;  // log2(1) = 0
  out.applicable = true;
  out.value = static_cast<double>(n - 6) / (4.0 * std::log2(static_cast<double>(n)));
  return out;
}

// ---------------------------------------------------------------------------
// Random generation helpers (used by the CLI batches and the test suites)
// ---------------------------------------------------------------------------

inline Coloring random_coloring(const BoardDims& dims, std::mt19937_64& rng) {
  Coloring col(dims);
  for (auto& c : col.labels) {
    c = (rng() & 1u) ? PlayerColor::Second : PlayerColor::First;
  }
  return col;
}

inline Coloring random_halving_coloring(const BoardDims& dims, std::mt19937_64& rng) {
  const std::int64_t cells = dims.cell_count();
  std::vector<std::int32_t> order(static_cast<std::size_t>(cells));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  Coloring col(dims);
  std::fill(col.labels.begin(), col.labels.end(), PlayerColor::Second);
  for (std::int64_t i = 0; i < (cells + 1) / 2; ++i) {
    col.labels[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] =
        PlayerColor::First;
  }
  return col;
}

inline std::optional<Coloring> random_proper_halving_coloring(const BoardDims& dims,
                                                              std::mt19937_64& rng,
                                                              int max_tries = 10000) {
  LineSet lines = enumerate_lines(dims);
  for (int t = 0; t < max_tries; ++t) {
    Coloring col = random_halving_coloring(dims, rng);
    if (is_proper(col, lines)) return col;
  }
  return std::nullopt;
}

inline LayerAssignment random_layer_assignment(int n, std::mt19937_64& rng) {
  std::vector<LayerChoice> f(static_cast<std::size_t>(n), LayerChoice::Flipped);
  std::fill(f.begin(), f.begin() + (n + 1) / 2, LayerChoice::Base);
  std::shuffle(f.begin(), f.end(), rng);
  return LayerAssignment{std::move(f)};
}

}  // namespace ctt

#endif
