#ifndef CTT_COUNTING_HPP
#define CTT_COUNTING_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <future>
#include <optional>
#include <vector>

#include "ctt/bigint.hpp"
#include "ctt/errors.hpp"
#include "ctt/game.hpp"

namespace ctt {

// (n^d)! unrestricted; (n^d)! / (n!)^(n^(d-1)) under gravity, computed as
// the multinomial coefficient of the column multiset to stay in integer
// arithmetic.
inline bigint play_count_formula(const BoardDims& dims, RestrictionMode mode) {
  if (mode == RestrictionMode::Unrestricted) {
    return big_factorial(static_cast<unsigned>(dims.cell_count()));
  }
  return big_multinomial_equal_groups(static_cast<unsigned>(dims.column_count()),
                                      static_cast<unsigned>(dims.n));
}

// |TP_3T(n,d)| = C(n^d, floor(n^d / 2)), the number of halving colorings.
inline bigint tp_count_formula(const BoardDims& dims) {
  unsigned cells = static_cast<unsigned>(dims.cell_count());
  return big_binomial(cells, cells / 2);
}

namespace detail {

// Iterative enumeration of all orderings of a multiset with `slots`
// distinct symbols of equal multiplicity. Gravity plays are the case
// slots = n^(d-1), multiplicity = n (the Lemma-1 bijection); unrestricted
// plays are slots = n^d, multiplicity = 1. The visitor sees each complete
// choice sequence; an explicit stack avoids deep recursion on long plays.
template <typename OnComplete>
std::uint64_t enumerate_slot_sequences(std::int64_t slots, int multiplicity,
                                       std::int64_t first_lo, std::int64_t first_hi,
                                       std::uint64_t cap, std::atomic<std::uint64_t>& global,
                                       OnComplete&& on_complete) {
  const std::int64_t depth = slots * multiplicity;
  std::vector<std::int32_t> choice(static_cast<std::size_t>(depth), -1);
  std::vector<int> used(static_cast<std::size_t>(slots), 0);
  std::uint64_t local = 0;
  std::int64_t pos = 0;
  while (pos >= 0) {
    std::int64_t lo = pos == 0 ? first_lo : 0;
    std::int64_t hi = pos == 0 ? first_hi : slots;
    std::int32_t c = choice[static_cast<std::size_t>(pos)];
    if (c >= 0) {
      --used[static_cast<std::size_t>(c)];
      ++c;
    } else {
      c = static_cast<std::int32_t>(lo);
    }
    while (c < hi && used[static_cast<std::size_t>(c)] == multiplicity) ++c;
    if (c >= hi) {
      choice[static_cast<std::size_t>(pos)] = -1;
      --pos;
      continue;
    }
    choice[static_cast<std::size_t>(pos)] = c;
    ++used[static_cast<std::size_t>(c)];
    if (pos == depth - 1) {
      ++local;
      if (global.fetch_add(1, std::memory_order_relaxed) + 1 > cap) {
        throw resource_limit_error("play enumeration exceeded cap of " + std::to_string(cap),
                                   local);
      }
      on_complete(choice);
    } else {
      ++pos;
    }
  }
  return local;
}

inline std::uint64_t checked_cap_from_formula(const bigint& expected, std::uint64_t cap,
                                              const char* what) {
  if (expected > cap) {
    throw resource_limit_error(std::string(what) + " expects " + expected.str() +
                               " objects, over the cap of " + std::to_string(cap));
  }
  return cap;
}

}  // namespace detail

// Exhaustive play count by depth-first enumeration. Gravity mode walks
// column sequences and spot-checks one play per shard with is_play_valid;
// the returned count is the oracle the closed form is tested against.
inline std::uint64_t enumerate_plays(const BoardDims& dims, RestrictionMode mode,
                                     std::uint64_t cap, int threads = 1) {
  detail::checked_cap_from_formula(play_count_formula(dims, mode), cap, "play enumeration");
  const bool gravity = mode == RestrictionMode::Gravity;
  const std::int64_t slots = gravity ? dims.column_count() : dims.cell_count();
  const int multiplicity = gravity ? dims.n : 1;
  std::atomic<std::uint64_t> global{0};

  auto run_shard = [&](std::int64_t lo, std::int64_t hi) -> std::uint64_t {
    bool sampled = false;
    return detail::enumerate_slot_sequences(
        slots, multiplicity, lo, hi, cap, global,
        [&](const std::vector<std::int32_t>& seq) {
          if (sampled || !gravity) return;
          sampled = true;
          std::vector<ColumnId> cols;
          cols.reserve(seq.size());
          for (std::int32_t c : seq) cols.push_back(column_at(dims, c));
          Play play = columns_as_play(cols, dims);
          if (!is_play_valid(play, dims, RestrictionMode::Gravity)) {
            throw error("enumerated column sequence is not a valid gravity play");
          }
        });
  };

  if (threads <= 1 || slots < 2) return run_shard(0, slots);

  int workers = static_cast<int>(std::min<std::int64_t>(threads, slots));
  std::vector<std::future<std::uint64_t>> futs;
  for (int w = 0; w < workers; ++w) {
    std::int64_t lo = slots * w / workers;
    std::int64_t hi = slots * (w + 1) / workers;
    futs.push_back(std::async(std::launch::async, run_shard, lo, hi));
  }
  std::uint64_t total = 0;
  for (auto& f : futs) total += f.get();
  return total;
}

// All terminal colorings of a board: every halving coloring in Unrestricted
// mode (generated combinatorially), the deduplicated terminal positions of
// all valid plays under Gravity. Returned in canonical (label-lex) order.
inline std::vector<Coloring> enumerate_tp(const BoardDims& dims, RestrictionMode mode,
                                          std::uint64_t cap, int threads = 1) {
  const std::int64_t cells = dims.cell_count();
  if (mode == RestrictionMode::Unrestricted) {
    detail::checked_cap_from_formula(tp_count_formula(dims), cap, "terminal positions");
    std::vector<Coloring> out;
    const int firsts = static_cast<int>((cells + 1) / 2);
    std::vector<std::int32_t> comb(static_cast<std::size_t>(firsts));
    for (int i = 0; i < firsts; ++i) comb[static_cast<std::size_t>(i)] = i;
    while (true) {
      Coloring col(dims);
      std::fill(col.labels.begin(), col.labels.end(), PlayerColor::Second);
      for (std::int32_t i : comb) col.labels[static_cast<std::size_t>(i)] = PlayerColor::First;
      out.push_back(std::move(col));
      // next combination in lex order
      int k = firsts - 1;
      while (k >= 0 && comb[static_cast<std::size_t>(k)] ==
                           static_cast<std::int32_t>(cells) - firsts + k) {
        --k;
      }
      if (k < 0) break;
      ++comb[static_cast<std::size_t>(k)];
      for (int j = k + 1; j < firsts; ++j) {
        comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  detail::checked_cap_from_formula(play_count_formula(dims, mode), cap,
                                   "gravity terminal positions");
  const std::int64_t slots = dims.column_count();
  std::atomic<std::uint64_t> global{0};

  auto run_shard = [&](std::int64_t lo, std::int64_t hi) {
    std::vector<std::vector<PlayerColor>> found;
    std::vector<int> height(static_cast<std::size_t>(slots), 0);
    std::vector<PlayerColor> labels(static_cast<std::size_t>(cells), PlayerColor::First);
    detail::enumerate_slot_sequences(
        slots, dims.n, lo, hi, cap, global, [&](const std::vector<std::int32_t>& seq) {
          std::fill(height.begin(), height.end(), 0);
          for (std::size_t i = 0; i < seq.size(); ++i) {
            std::int32_t col = seq[i];
            int layer = ++height[static_cast<std::size_t>(col)];
            CellIndex ci = column_cell_index(dims, col, layer);
            labels[static_cast<std::size_t>(ci)] =
                i % 2 == 0 ? PlayerColor::First : PlayerColor::Second;
          }
          found.push_back(labels);
        });
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
  };

  std::vector<std::vector<PlayerColor>> merged;
  if (threads <= 1 || slots < 2) {
    merged = run_shard(0, slots);
  } else {
    int workers = static_cast<int>(std::min<std::int64_t>(threads, slots));
    std::vector<std::future<std::vector<std::vector<PlayerColor>>>> futs;
    for (int w = 0; w < workers; ++w) {
      std::int64_t lo = slots * w / workers;
      std::int64_t hi = slots * (w + 1) / workers;
      futs.push_back(std::async(std::launch::async, run_shard, lo, hi));
    }
    for (auto& f : futs) {
      auto part = f.get();
      merged.insert(merged.end(), part.begin(), part.end());
    }
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  }

  std::vector<Coloring> out;
  out.reserve(merged.size());
  for (auto& labels : merged) {
    Coloring col(dims);
    col.labels = std::move(labels);
    out.push_back(std::move(col));
  }
  return out;
}

struct CountReport {
  BoardDims dims;
  RestrictionMode mode = RestrictionMode::Gravity;
  bigint formula_value;
  std::optional<bigint> enumerated_value;
  std::chrono::milliseconds elapsed{0};

  bool match() const {
    return !enumerated_value.has_value() || *enumerated_value == formula_value;
  }
};

inline CountReport count_plays_report(const BoardDims& dims, RestrictionMode mode,
                                      bool run_enumeration, std::uint64_t cap,
                                      int threads = 1) {
  CountReport rep;
  rep.dims = dims;
  rep.mode = mode;
  auto start = std::chrono::steady_clock::now();
  rep.formula_value = play_count_formula(dims, mode);
  if (run_enumeration) {
    rep.enumerated_value = bigint(enumerate_plays(dims, mode, cap, threads));
  }
  rep.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  return rep;
}

}  // namespace ctt

#endif
