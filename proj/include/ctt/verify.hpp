#ifndef CTT_VERIFY_HPP
#define CTT_VERIFY_HPP

#include <future>
#include <string>
#include <unordered_set>
#include <vector>

#include "ctt/serialize.hpp"
#include "ctt/solver.hpp"

namespace ctt {

struct VerifyOptions {
  std::uint64_t cap = 1'000'000;       // max enumerated objects per sweep item
  std::uint64_t node_cap = 100'000'000;
  int threads = 1;
  std::uint64_t seed = 1;
  std::string fault_key;  // test hook: corrupts the named check's formula
};

struct VerifyCheck {
  std::string key;
  std::string status;  // "PASS" | "FAIL" | "SKIPPED"
  json detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;

  int count(const std::string& status) const {
    int c = 0;
    for (const auto& chk : checks) {
      if (chk.status == status) ++c;
    }
    return c;
  }
  // Success requires every executed check to pass and at least one executed.
  bool ok() const { return count("FAIL") == 0 && count("PASS") > 0; }
};

// Every distinct position reachable from the empty board under stop-at-win
// play, the terminal ones included. Deduplicated on (labels, player-to-move).
inline std::vector<Position> reachable_positions(const BoardDims& dims, RestrictionMode mode,
                                                 std::uint64_t cap) {
  LineSet lines = enumerate_lines(dims);
  std::vector<Position> out;
  std::unordered_set<std::string> seen;
  std::vector<Position> stack{Position(dims)};
  seen.insert(stack.back().label_string());
  while (!stack.empty()) {
    Position pos = std::move(stack.back());
    stack.pop_back();
    out.push_back(pos);
    if (out.size() > cap) {
      throw resource_limit_error("reachable-position sweep exceeded cap", out.size());
    }
    if (find_winning_line(pos, lines)) continue;  // game over, no children
    for (const Cell& mv : available_moves(pos, mode)) {
      Position next = apply_move(pos, mv, mode);
      if (seen.insert(next.label_string()).second) stack.push_back(std::move(next));
    }
  }
  return out;
}

namespace detail {

inline VerifyCheck check_lemma5_line_count(const VerifyOptions& opt) {
  json items = json::array();
  bool all_match = true;
  for (int n = 1; n <= 5; ++n) {
    for (int d = 1; d <= 4; ++d) {
      std::int64_t space = 1;
      bool fits = true;
      for (int i = 0; i < d; ++i) {
        space *= n + 2;
        if (space > static_cast<std::int64_t>(opt.cap) || space > kDefaultEnumerationCap) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      LineSet lines = enumerate_lines(BoardDims(n, d));
      bigint formula = line_count_formula(BoardDims(n, d));
      bool match = bigint(static_cast<std::int64_t>(lines.size())) == formula;
      all_match = all_match && match;
      items.push_back({{"n", n},
                       {"d", d},
                       {"enumerated", lines.size()},
                       {"formula", formula.str()},
                       {"match", match}});
    }
  }
  if (items.empty()) return {"Lemma 5", "SKIPPED", {{"reason", "cap excludes every board"}}};
  return {"Lemma 5", all_match ? "PASS" : "FAIL", {{"boards", items}}};
}

inline VerifyCheck check_lemma1_play_count(const VerifyOptions& opt) {
  const bool fault = opt.fault_key == "Lemma 1";
  json items = json::array();
  bool all_match = true;
  for (int n = 1; n <= 4; ++n) {
    for (int d = 1; d <= 4; ++d) {
      BoardDims dims(n, d);
      bigint formula = play_count_formula(dims, RestrictionMode::Gravity);
      if (formula > opt.cap) continue;
      std::uint64_t enumerated =
          enumerate_plays(dims, RestrictionMode::Gravity, opt.cap, opt.threads);
      bigint claimed = fault ? formula + 1 : formula;
      bool match = claimed == enumerated;
      all_match = all_match && match;
      items.push_back({{"n", n},
                       {"d", d},
                       {"formula", claimed.str()},
                       {"enumerated", enumerated},
                       {"match", match}});
    }
  }
  if (items.empty()) return {"Lemma 1", "SKIPPED", {{"reason", "cap excludes every board"}}};
  return {"Lemma 1", all_match ? "PASS" : "FAIL", {{"boards", items}}};
}

inline VerifyCheck check_s3_strictness(const VerifyOptions& opt) {
  json items = json::array();
  bool all_ok = true;
  for (auto [n, d] : {std::pair{2, 2}, {3, 2}, {2, 3}}) {
    BoardDims dims(n, d);
    if (play_count_formula(dims, RestrictionMode::Gravity) > opt.cap) continue;
    auto tps = enumerate_tp(dims, RestrictionMode::Gravity, opt.cap, opt.threads);
    bigint full = tp_count_formula(dims);
    bool strict = bigint(static_cast<std::int64_t>(tps.size())) < full;
    // No gravity terminal coloring may leave the bottom layer entirely
    // Second: the very first move lands in layer 1 and is First's.
    bool layer1_ok = true;
    const std::int64_t cols = dims.column_count();
    for (const Coloring& col : tps) {
      bool any_first = false;
      for (std::int64_t c = 0; c < cols; ++c) {
        if (col.labels[static_cast<std::size_t>(c)] == PlayerColor::First) {
          any_first = true;
          break;
        }
      }
      if (!any_first) {
        layer1_ok = false;
        break;
      }
    }
    all_ok = all_ok && strict && layer1_ok;
    items.push_back({{"n", n},
                     {"d", d},
                     {"tp_c2t", tps.size()},
                     {"tp_3t", full.str()},
                     {"strict", strict},
                     {"layer1_never_all_second", layer1_ok}});
  }
  if (items.empty()) {
    return {"S3 strictness", "SKIPPED", {{"reason", "cap excludes every board"}}};
  }
  return {"S3 strictness", all_ok ? "PASS" : "FAIL", {{"boards", items}}};
}

inline VerifyCheck check_lemma4_construction(const VerifyOptions& opt) {
  const std::vector<std::pair<int, int>> dims_cycle{{2, 2}, {2, 3}, {4, 2}, {3, 4}};
  const int total = 200;
  int ran = 0, good = 0;
  json failures = json::array();
  for (int i = 0; i < total; ++i) {
    auto [n, d] = dims_cycle[static_cast<std::size_t>(i) % dims_cycle.size()];
    BoardDims full(n, d);
    if (static_cast<std::uint64_t>(full.cell_count()) > opt.cap) continue;
    std::mt19937_64 rng(opt.seed * 1000003 + static_cast<std::uint64_t>(i));
    Coloring layer = random_halving_coloring(BoardDims(n, d - 1), rng);
    LayerAssignment f = random_layer_assignment(n, rng);
    ++ran;
    Play play = construct_c2t_play_for_layered(layer, f);
    bool valid = static_cast<bool>(is_play_valid(play, full, RestrictionMode::Gravity));
    bool matches = terminal_position(play, full) == layered_coloring(layer, f);
    if (valid && matches) {
      ++good;
    } else {
      failures.push_back({{"instance", i}, {"valid", valid}, {"matches", matches}});
    }
  }
  if (ran == 0) return {"Lemma 4", "SKIPPED", {{"reason", "cap excludes every instance"}}};
  json detail{{"instances", ran}, {"constructions_ok", good}};
  if (!failures.empty()) detail["failures"] = failures;
  return {"Lemma 4", good == ran ? "PASS" : "FAIL", detail};
}

inline VerifyCheck check_theorem5_greedy(const VerifyOptions& opt) {
  const std::vector<std::pair<int, int>> dims_cycle{{3, 2}, {4, 2}, {5, 2}, {2, 2}, {3, 3}};
  const int total = 100;
  int ran = 0, successes = 0, budget_failures = 0;
  bool steps_ok = true, propers_ok = true;
  for (int i = 0; i < total; ++i) {
    auto [n, d] = dims_cycle[static_cast<std::size_t>(i) % dims_cycle.size()];
    if (static_cast<std::uint64_t>(BoardDims(n, d).cell_count()) > opt.cap) continue;
    std::mt19937_64 rng(opt.seed * 2000003 + static_cast<std::uint64_t>(i));
    auto layer = random_proper_halving_coloring(BoardDims(n, d - 1), rng);
    if (!layer) continue;
    ++ran;
    GreedyResult res = greedy_layer_assignment(*layer);
    for (const GreedyStep& step : res.trace) {
      if (step.k_after != step.k_before - std::max(step.x, step.y) ||
          step.k_after > step.k_before / 2) {
        steps_ok = false;
      }
    }
    if (res.success) {
      ++successes;
      LineSet lines = enumerate_lines(BoardDims(n, d));
      if (!monochromatic_lines(*res.coloring, lines).empty()) propers_ok = false;
    } else {
      ++budget_failures;
    }
  }
  if (ran == 0) return {"Theorem 5", "SKIPPED", {{"reason", "cap excludes every instance"}}};
  json detail{{"instances", ran},
              {"successes", successes},
              {"budget_failures", budget_failures},
              {"every_step_halves", steps_ok},
              {"every_success_proper", propers_ok}};
  return {"Theorem 5", steps_ok && propers_ok ? "PASS" : "FAIL", detail};
}

struct HjChainRow {
  int d = 0;
  // -1 unknown (over cap), 0 none exists, 1 proper exists
  int all = -1, halving = -1, c2t = -1;
};

inline std::vector<HjChainRow> hj_chain_rows(const VerifyOptions& opt, int n) {
  std::vector<HjChainRow> rows;
  for (int d = 1; d <= 6; ++d) {
    BoardDims dims(n, d);
    std::int64_t cells = dims.cell_count();
    if (cells > 60 || big_pow(2, static_cast<unsigned>(cells)) > opt.cap) break;
    HjChainRow row;
    row.d = d;
    row.all = hj_variant_search(n, d, HjVariant::All, opt.cap, opt.threads).proper_exists;
    if (tp_count_formula(dims) <= opt.cap) {
      row.halving =
          hj_variant_search(n, d, HjVariant::Halving, opt.cap, opt.threads).proper_exists;
    }
    if (play_count_formula(dims, RestrictionMode::Gravity) <= opt.cap) {
      row.c2t =
          hj_variant_search(n, d, HjVariant::C2TReachable, opt.cap, opt.threads).proper_exists;
    }
    rows.push_back(row);
  }
  return rows;
}

inline json hj_rows_to_json(const std::vector<HjChainRow>& rows) {
  auto name = [](int v) { return v < 0 ? "skipped" : v == 0 ? "none_exists" : "proper_exists"; };
  json items = json::array();
  for (const auto& r : rows) {
    items.push_back(
        {{"d", r.d}, {"all", name(r.all)}, {"halving", name(r.halving)}, {"c2t", name(r.c2t)}});
  }
  return items;
}

// ProperExists(C2TReachable) => ProperExists(Halving) => ProperExists(All),
// checked over every variant the cap allowed.
inline VerifyCheck check_s4_chain(const std::vector<HjChainRow>& rows) {
  if (rows.empty()) return {"S4 chain", "SKIPPED", {{"reason", "cap excludes every board"}}};
  bool ok = true;
  for (const auto& r : rows) {
    if (r.c2t == 1 && r.halving == 0) ok = false;
    if (r.halving == 1 && r.all == 0) ok = false;
    if (r.c2t == 1 && r.all == 0) ok = false;
  }
  return {"S4 chain", ok ? "PASS" : "FAIL", {{"rows", hj_rows_to_json(rows)}}};
}

// Once the All variant hits NoneExists it must stay NoneExists for larger d.
inline VerifyCheck check_corollary_monotone(const std::vector<HjChainRow>& rows) {
  if (rows.size() < 2) {
    return {"Corollary", "SKIPPED", {{"reason", "fewer than two dimensions under cap"}}};
  }
  bool ok = true;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    if (rows[i].all == 0 && rows[i + 1].all == 1) ok = false;
  }
  return {"Corollary", ok ? "PASS" : "FAIL", {{"rows", hj_rows_to_json(rows)}}};
}

inline VerifyCheck check_theorem2_solver(const VerifyOptions& opt) {
  std::vector<BoardDims> boards;
  for (int n = 1; n <= 9; ++n) {
    for (int d = 1; d <= 4; ++d) {
      std::int64_t cells = 1;
      for (int i = 0; i < d; ++i) cells *= n;
      if (cells <= 9) boards.emplace_back(n, d);
    }
  }

  SolverConfig config;
  config.node_cap = opt.node_cap;
  config.tt_bits = 12;
  config.seed = opt.seed;

  struct Item {
    BoardDims dims;
    RestrictionMode mode;
  };
  std::vector<Item> items;
  for (const BoardDims& dims : boards) {
    for (RestrictionMode mode : {RestrictionMode::Unrestricted, RestrictionMode::Gravity}) {
      if (play_count_formula(dims, mode) > opt.cap) continue;
      items.push_back({dims, mode});
    }
  }
  if (items.empty()) {
    return {"Theorem 2", "SKIPPED", {{"reason", "cap excludes every board"}}};
  }

  struct ItemResult {
    std::uint64_t positions = 0;
    std::uint64_t mismatches = 0;
    GameValue empty_value = GameValue::Draw;
  };
  auto run_item = [&](const Item& item) {
    ItemResult r;
    auto positions = reachable_positions(item.dims, item.mode, opt.cap);
    r.positions = positions.size();
    for (const Position& pos : positions) {
      GameValue reference = naive_solve(pos, item.mode, opt.node_cap);
      SolveResult engine = solve(pos, item.mode, config);
      if (engine.value != reference) ++r.mismatches;
      if (pos.move_count == 0) r.empty_value = engine.value;
    }
    return r;
  };

  std::vector<ItemResult> results(items.size());
  if (opt.threads <= 1) {
    for (std::size_t i = 0; i < items.size(); ++i) results[i] = run_item(items[i]);
  } else {
    std::vector<std::future<ItemResult>> futs;
    futs.reserve(items.size());
    for (const auto& item : items) {
      futs.push_back(std::async(std::launch::async, run_item, item));
    }
    for (std::size_t i = 0; i < items.size(); ++i) results[i] = futs[i].get();
  }

  bool equivalence_ok = true, no_3t_second_win = true, ttt_draw_seen = true;
  json rows = json::array();
  json zugzwang = json::array();
  std::uint64_t total_positions = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const Item& item = items[i];
    const ItemResult& r = results[i];
    total_positions += r.positions;
    if (r.mismatches > 0) equivalence_ok = false;
    if (item.mode == RestrictionMode::Unrestricted && r.empty_value == GameValue::SecondWin) {
      no_3t_second_win = false;
    }
    if (item.mode == RestrictionMode::Gravity && r.empty_value == GameValue::SecondWin) {
      zugzwang.push_back({{"n", item.dims.n}, {"d", item.dims.d}});
    }
    if (item.mode == RestrictionMode::Unrestricted && item.dims == BoardDims(3, 2) &&
        r.empty_value != GameValue::Draw) {
      ttt_draw_seen = false;
    }
    rows.push_back({{"n", item.dims.n},
                    {"d", item.dims.d},
                    {"mode", mode_name(item.mode)},
                    {"positions", r.positions},
                    {"mismatches", r.mismatches},
                    {"empty_value", game_value_name(r.empty_value)}});
  }
  bool ok = equivalence_ok && no_3t_second_win && ttt_draw_seen;
  json detail{{"boards", rows},
              {"positions_checked", total_positions},
              {"oracle_equivalence", equivalence_ok},
              {"no_3t_empty_second_win", no_3t_second_win},
              {"ttt_3x3_draw", ttt_draw_seen},
              {"gravity_second_win_boards", zugzwang}};
  return {"Theorem 2", ok ? "PASS" : "FAIL", detail};
}

}  // namespace detail

// Runs every verification sweep in a fixed order and reports one row per
// check. Output carries no timing so runs are byte-comparable.
inline VerifyReport verify_suite(const VerifyOptions& opt) {
  VerifyReport report;
  report.checks.push_back(detail::check_lemma5_line_count(opt));
  report.checks.push_back(detail::check_lemma1_play_count(opt));
  report.checks.push_back(detail::check_s3_strictness(opt));
  report.checks.push_back(detail::check_lemma4_construction(opt));
  report.checks.push_back(detail::check_theorem5_greedy(opt));
  auto rows = opt.cap < 4 ? std::vector<detail::HjChainRow>{} : detail::hj_chain_rows(opt, 2);
  report.checks.push_back(detail::check_s4_chain(rows));
  report.checks.push_back(detail::check_corollary_monotone(rows));
  report.checks.push_back(detail::check_theorem2_solver(opt));
  return report;
}

inline json verify_report_to_json(const VerifyReport& report, const VerifyOptions& opt) {
  json checks = json::array();
  for (const auto& chk : report.checks) {
    checks.push_back({{"key", chk.key}, {"status", chk.status}, {"detail", chk.detail}});
  }
  // The worker count is deliberately not echoed: results are sharding-
  // independent and runs must stay byte-comparable across thread counts.
  return json{{"cap", opt.cap},
              {"seed", opt.seed},
              {"checks", checks},
              {"passed", report.count("PASS")},
              {"failed", report.count("FAIL")},
              {"skipped", report.count("SKIPPED")},
              {"ok", report.ok()}};
}

}  // namespace ctt

#endif
