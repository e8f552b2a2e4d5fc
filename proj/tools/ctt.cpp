// Command-line front end for the n^d connect-tac-toe toolkit: line
// enumeration, play counting, terminal-position sweeps, layered-coloring
// construction, greedy assignments, coloring searches, exact solving, the
// verification suite, and an interactive game loop.

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ctt/serialize.hpp"
#include "ctt/verify.hpp"

namespace {

using ctt::json;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct CommonFlags {
  int n = 3;
  int d = 2;
  std::string mode = "c2t";
  std::uint64_t cap = 1'000'000;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string format = "json";
};

ctt::RestrictionMode parse_mode(const std::string& s) {
  if (s == "3t") return ctt::RestrictionMode::Unrestricted;
  if (s == "c2t") return ctt::RestrictionMode::Gravity;
  throw CLI::ValidationError("--mode", "expected 3t or c2t");
}

// csv renders an object as key,value rows (nested values as compact JSON);
// text pretty-prints. Arrays of objects become one row per element.
void emit(const json& j, const std::string& format) {
  if (format == "json") {
    std::cout << j.dump() << "\n";
    return;
  }
  if (format == "csv") {
    if (j.is_array()) {
      for (std::size_t i = 0; i < j.size(); ++i) {
        std::cout << i;
        const json& row = j[i];
        if (row.is_object()) {
          for (const auto& [key, value] : row.items()) {
            std::cout << "," << (value.is_string() ? value.get<std::string>() : value.dump());
          }
        } else {
          std::cout << "," << row.dump();
        }
        std::cout << "\n";
      }
    } else {
      for (const auto& [key, value] : j.items()) {
        std::cout << key << ","
                  << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
      }
    }
    return;
  }
  std::cout << j.dump(2) << "\n";
}

// Enumeration sweeps default to 10^6 objects; search commands bump an
// unset --cap to 10^8 nodes.
CLI::Option* add_common(CLI::App* cmd, CommonFlags& flags, bool with_mode = true) {
  cmd->add_option("--n", flags.n, "side length")->check(CLI::PositiveNumber);
  cmd->add_option("--d", flags.d, "dimension")->check(CLI::PositiveNumber);
  if (with_mode) {
    cmd->add_option("--mode", flags.mode, "3t (unrestricted) or c2t (gravity)")
        ->check(CLI::IsMember({"3t", "c2t"}));
  }
  CLI::Option* cap =
      cmd->add_option("--cap", flags.cap, "resource cap on enumerated objects / search nodes");
  cmd->add_option("--seed", flags.seed, "seed for randomized batches and hashing");
  cmd->add_option("--threads", flags.threads, "worker count for sharded sweeps")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", flags.format, "json, csv, or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  return cap;
}

int run_lines(const CommonFlags& flags) {
  ctt::LineSet lines = ctt::enumerate_lines(ctt::BoardDims(flags.n, flags.d),
                                            static_cast<std::int64_t>(flags.cap));
  emit(ctt::lines_to_json(lines), flags.format);
  return kExitOk;
}

int run_count_plays(const CommonFlags& flags, bool verify) {
  ctt::RestrictionMode mode = parse_mode(flags.mode);
  ctt::CountReport rep = ctt::count_plays_report(ctt::BoardDims(flags.n, flags.d), mode,
                                                 verify, flags.cap, flags.threads);
  emit(ctt::count_report_to_json(rep), flags.format);
  return rep.match() ? kExitOk : kExitMismatch;
}

int run_enumerate_tp(const CommonFlags& flags, bool list) {
  ctt::BoardDims dims(flags.n, flags.d);
  ctt::RestrictionMode mode = parse_mode(flags.mode);
  auto tps = ctt::enumerate_tp(dims, mode, flags.cap, flags.threads);
  ctt::bigint full = ctt::tp_count_formula(dims);
  json j{{"n", flags.n},
         {"d", flags.d},
         {"mode", flags.mode},
         {"count", tps.size()},
         {"tp_3t_formula", full.str()}};
  if (mode == ctt::RestrictionMode::Gravity) {
    j["strict_subset"] = ctt::bigint(static_cast<std::int64_t>(tps.size())) < full;
  }
  if (list) {
    json arr = json::array();
    for (const auto& col : tps) arr.push_back(col.to_string());
    j["colorings"] = arr;
  }
  emit(j, flags.format);
  return kExitOk;
}

int run_construct(const CommonFlags& flags) {
  ctt::BoardDims full(flags.n, flags.d);
  if (flags.d < 2) throw ctt::precondition_error("construct requires d >= 2");
  std::mt19937_64 rng(flags.seed);
  ctt::Coloring layer = ctt::random_halving_coloring(ctt::BoardDims(flags.n, flags.d - 1), rng);
  ctt::LayerAssignment f = ctt::random_layer_assignment(flags.n, rng);
  ctt::Play play = ctt::construct_c2t_play_for_layered(layer, f);
  bool valid = static_cast<bool>(ctt::is_play_valid(play, full, ctt::RestrictionMode::Gravity));
  bool matches = ctt::terminal_position(play, full) == ctt::layered_coloring(layer, f);
  json j{{"n", flags.n},
         {"d", flags.d},
         {"seed", flags.seed},
         {"layer_coloring", layer.to_string()},
         {"assignment", f},
         {"play", play},
         {"columns", ctt::play_as_columns(play)},
         {"valid", valid},
         {"matches_target", matches}};
  emit(j, flags.format);
  return valid && matches ? kExitOk : kExitMismatch;
}

int run_greedy(const CommonFlags& flags) {
  if (flags.d < 2) throw ctt::precondition_error("greedy requires d >= 2");
  std::mt19937_64 rng(flags.seed);
  auto layer = ctt::random_proper_halving_coloring(ctt::BoardDims(flags.n, flags.d - 1), rng);
  if (!layer) {
    throw ctt::precondition_error("no proper halving coloring found for the layer board");
  }
  ctt::GreedyResult res = ctt::greedy_layer_assignment(*layer);
  json j = ctt::greedy_result_to_json(res);
  j["n"] = flags.n;
  j["d"] = flags.d;
  j["seed"] = flags.seed;
  j["layer_coloring"] = layer->to_string();
  emit(j, flags.format);
  return kExitOk;
}

int run_hj_search(const CommonFlags& flags, const std::string& variant_name,
                  const std::string& check_witness) {
  // Replays a previously emitted witness coloring through the properness
  // check instead of searching.
  if (!check_witness.empty()) {
    ctt::Coloring col = ctt::coloring_from_string(check_witness);
    ctt::LineSet lines = ctt::enumerate_lines(col.dims, static_cast<std::int64_t>(flags.cap));
    auto mono = ctt::monochromatic_lines(col, lines);
    json j{{"n", col.dims.n},
           {"d", col.dims.d},
           {"coloring", col.to_string()},
           {"proper", mono.empty()},
           {"monochromatic_lines", mono}};
    emit(j, flags.format);
    return kExitOk;
  }
  ctt::HjVariant variant = variant_name == "all"       ? ctt::HjVariant::All
                           : variant_name == "halving" ? ctt::HjVariant::Halving
                                                       : ctt::HjVariant::C2TReachable;
  ctt::HjSearchResult res =
      ctt::hj_variant_search(flags.n, flags.d, variant, flags.cap, flags.threads);
  json j = ctt::hj_result_to_json(flags.n, flags.d, variant, res);
  j["lower_bound"] = ctt::lower_bound_to_json(flags.n, ctt::hj_c2t_lower_bound(flags.n));
  emit(j, flags.format);
  return kExitOk;
}

int run_solve(const CommonFlags& flags, const std::string& position, int tt_bits) {
  ctt::RestrictionMode mode = parse_mode(flags.mode);
  ctt::Position pos = position.empty()
                          ? ctt::Position(ctt::BoardDims(flags.n, flags.d))
                          : ctt::position_from_string(position);
  ctt::SolverConfig config;
  config.node_cap = flags.cap;
  config.tt_bits = tt_bits;
  config.seed = flags.seed;
  ctt::SolveResult res = ctt::solve(pos, mode, config);
  emit(ctt::solve_result_to_json(res), flags.format);
  return kExitOk;
}

int run_verify(const CommonFlags& flags, const std::string& fault_key) {
  ctt::VerifyOptions opt;
  opt.cap = flags.cap;
  opt.threads = flags.threads;
  opt.seed = flags.seed;
  opt.fault_key = fault_key;
  ctt::VerifyReport report = ctt::verify_suite(opt);
  if (flags.format == "text") {
    for (const auto& chk : report.checks) {
      std::cout << chk.key << std::string(16 - chk.key.size(), ' ') << chk.status << "\n";
    }
    std::cout << (report.ok() ? "OK" : "NOT OK") << " (" << report.count("PASS") << " passed, "
              << report.count("FAIL") << " failed, " << report.count("SKIPPED")
              << " skipped)\n";
  } else {
    emit(ctt::verify_report_to_json(report, opt), flags.format);
  }
  return report.ok() ? kExitOk : kExitMismatch;
}

// ----------------------------------------------------------------------------
// Interactive play
// ----------------------------------------------------------------------------

void render(const ctt::Position& pos) {
  const ctt::BoardDims& dims = pos.dims;
  const std::int64_t cols = dims.column_count();
  std::string flat = pos.label_string();
  for (int layer = dims.n; layer >= 1; --layer) {
    std::int64_t base = static_cast<std::int64_t>(layer - 1) * cols;
    if (dims.d <= 2) {
      std::cout << "  ";
      for (std::int64_t c = 0; c < cols; ++c) {
        std::cout << flat[static_cast<std::size_t>(base + c)];
      }
      std::cout << "   (layer " << layer << ")\n";
    } else {
      std::cout << "layer " << layer << ":\n";
      for (int x2 = 1; x2 <= dims.n; ++x2) {
        std::cout << "  ";
        for (int x1 = 1; x1 <= dims.n; ++x1) {
          std::int64_t c = static_cast<std::int64_t>(x2 - 1) * dims.n + (x1 - 1);
          std::cout << flat[static_cast<std::size_t>(base + c)];
        }
        std::cout << "\n";
      }
    }
  }
  std::cout << std::flush;
}

std::optional<std::vector<int>> parse_tokens(const std::string& line) {
  std::string cleaned = line;
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream in(cleaned);
  std::vector<int> out;
  int v;
  while (in >> v) out.push_back(v);
  if (!in.eof()) return std::nullopt;
  return out;
}

// Shallow reply for --best-effort: win now if possible, block an immediate
// opposing win, otherwise take the first available cell.
ctt::Cell fallback_move(const ctt::Position& pos, ctt::RestrictionMode mode,
                        const ctt::LineSet& lines) {
  auto moves = ctt::available_moves(pos, mode);
  for (const ctt::Cell& mv : moves) {
    ctt::Position next = ctt::apply_move(pos, mv, mode);
    if (ctt::find_winning_line(next, lines)) return mv;
  }
  for (const ctt::Cell& mv : moves) {
    ctt::Position probe = pos;
    probe.labels[static_cast<std::size_t>(ctt::cell_index(pos.dims, mv))] =
        ctt::to_state(ctt::opponent(pos.to_move()));
    if (ctt::find_winning_line(probe, lines)) return mv;
  }
  return moves.front();
}

int run_play(const CommonFlags& flags, const std::string& human, bool best_effort) {
  if (flags.d > 3) {
    std::cerr << "interactive play renders at most 3 dimensions; solving and counting "
                 "still work for d > 3\n";
    return kExitUsage;
  }
  ctt::BoardDims dims(flags.n, flags.d);
  ctt::RestrictionMode mode = parse_mode(flags.mode);
  ctt::PlayerColor human_color =
      human == "o" ? ctt::PlayerColor::Second : ctt::PlayerColor::First;
  ctt::LineSet lines = ctt::enumerate_lines(dims);
  ctt::SolverConfig config;
  config.node_cap = flags.cap;
  config.seed = flags.seed;

  ctt::Position pos(dims);
  std::cout << dims.to_string() << " " << flags.mode << ", you are "
            << ctt::color_char(human_color) << ". Moves are " << flags.d
            << " coordinates in [1," << flags.n << "]";
  if (mode == ctt::RestrictionMode::Gravity && dims.d >= 2) {
    std::cout << ", or a column prefix of " << dims.d - 1 << " coordinate"
              << (dims.d == 2 ? "" : "s");
  }
  std::cout << ".\n";

  while (true) {
    render(pos);
    auto win = ctt::find_winning_line(pos, lines);
    if (win) {
      std::cout << ctt::color_char(win->second) << " wins (line " << win->first << ").\n";
      return kExitOk;
    }
    if (pos.move_count == dims.cell_count()) {
      std::cout << "Draw: board full with no completed line.\n";
      return kExitOk;
    }
    if (pos.to_move() == human_color) {
      std::cout << "move> " << std::flush;
      std::string line;
      if (!std::getline(std::cin, line)) {
        std::cout << "\nGame abandoned.\n";
        return kExitOk;
      }
      auto tokens = parse_tokens(line);
      if (!tokens || tokens->empty()) {
        std::cout << "Enter coordinates, e.g. \"1 2\".\n";
        continue;
      }
      ctt::Cell cell;
      if (mode == ctt::RestrictionMode::Gravity &&
          static_cast<int>(tokens->size()) == dims.d - 1 && dims.d >= 2) {
        try {
          std::int32_t col = ctt::column_index(dims, ctt::ColumnId(*tokens));
          int layer = ctt::lowest_empty_layer(pos, col);
          if (layer == 0) {
            std::cout << "That column is full.\n";
            continue;
          }
          cell = ctt::cell_at(dims, ctt::column_cell_index(dims, col, layer));
        } catch (const ctt::invalid_cell_error& e) {
          std::cout << "Rejected (out of range): " << e.what() << "\n";
          continue;
        }
      } else if (static_cast<int>(tokens->size()) == dims.d) {
        cell = ctt::Cell(*tokens);
      } else {
        std::cout << "Expected " << dims.d << " coordinates.\n";
        continue;
      }
      try {
        pos = ctt::apply_move(pos, cell, mode);
      } catch (const ctt::illegal_move_error& e) {
        const char* kind = e.why == ctt::illegal_move_error::kind::occupied ? "occupied"
                           : e.why == ctt::illegal_move_error::kind::floating
                               ? "floating"
                               : "out of range";
        std::cout << "Rejected (" << kind << "): " << e.what() << "\n";
        continue;
      }
    } else {
      ctt::Cell reply;
      try {
        reply = ctt::best_move(pos, mode, config);
      } catch (const ctt::resource_limit_error&) {
        if (!best_effort) throw;
        reply = fallback_move(pos, mode, lines);
      }
      std::cout << "engine plays";
      for (int c : reply.coords) std::cout << " " << c;
      std::cout << "\n";
      pos = ctt::apply_move(pos, reply, mode);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"n^d connect-tac-toe toolkit"};
  app.require_subcommand(1);

  CommonFlags flags;

  auto* lines_cmd = app.add_subcommand("lines", "enumerate all geometric lines");
  add_common(lines_cmd, flags, /*with_mode=*/false);

  bool count_verify = false;
  auto* count_cmd = app.add_subcommand("count-plays", "play-count formula and oracle");
  add_common(count_cmd, flags);
  count_cmd->add_flag("--verify", count_verify, "also enumerate and compare");

  bool tp_list = false;
  auto* tp_cmd = app.add_subcommand("enumerate-tp", "terminal-position enumeration");
  add_common(tp_cmd, flags);
  tp_cmd->add_flag("--list", tp_list, "include the colorings themselves");

  auto* construct_cmd =
      app.add_subcommand("construct", "build a gravity play for a random layered coloring");
  add_common(construct_cmd, flags, /*with_mode=*/false);

  auto* greedy_cmd =
      app.add_subcommand("greedy", "greedy layer assignment for a random proper layer coloring");
  add_common(greedy_cmd, flags, /*with_mode=*/false);

  std::string variant = "all";
  std::string check_witness;
  auto* hj_cmd = app.add_subcommand("hj-search", "exhaustive proper-coloring existence search");
  add_common(hj_cmd, flags, /*with_mode=*/false);
  hj_cmd->add_option("--variant", variant, "all, halving, or c2t")
      ->check(CLI::IsMember({"all", "halving", "c2t"}));
  hj_cmd->add_option("--check", check_witness,
                     "check a witness coloring '<n>^<d>:<labels>' for properness");

  std::string position;
  int tt_bits = 16;
  auto* solve_cmd = app.add_subcommand("solve", "exact game value and principal variation");
  CLI::Option* solve_cap = add_common(solve_cmd, flags);
  solve_cmd->add_option("--position", position, "start position '<n>^<d>:<labels>'");
  solve_cmd->add_option("--tt-bits", tt_bits, "transposition table size exponent")
      ->check(CLI::Range(4, 28));

  std::string fault_key;
  auto* verify_cmd = app.add_subcommand("verify", "run the full verification suite");
  add_common(verify_cmd, flags, /*with_mode=*/false);
  verify_cmd->add_option("--inject-fault", fault_key, "test hook: corrupt the named check")
      ->group("");

  std::string human = "x";
  bool best_effort = false;
  auto* play_cmd = app.add_subcommand("play", "interactive text game against the engine");
  CLI::Option* play_cap = add_common(play_cmd, flags);
  play_cmd->add_option("--human", human, "your color, x or o")
      ->check(CLI::IsMember({"x", "o"}));
  play_cmd->add_flag("--best-effort", best_effort,
                     "fall back to a shallow reply when the exact search is out of budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (lines_cmd->parsed()) return run_lines(flags);
    if (count_cmd->parsed()) return run_count_plays(flags, count_verify);
    if (tp_cmd->parsed()) return run_enumerate_tp(flags, tp_list);
    if (construct_cmd->parsed()) return run_construct(flags);
    if (greedy_cmd->parsed()) return run_greedy(flags);
    if (hj_cmd->parsed()) return run_hj_search(flags, variant, check_witness);
    if (solve_cmd->parsed()) {
      if (solve_cap->count() == 0) flags.cap = 100'000'000;
      return run_solve(flags, position, tt_bits);
    }
    if (verify_cmd->parsed()) return run_verify(flags, fault_key);
    if (play_cmd->parsed()) {
      if (play_cap->count() == 0) flags.cap = 100'000'000;
      return run_play(flags, human, best_effort);
    }
  } catch (const ctt::resource_limit_error& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const ctt::invalid_dims_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ctt::invalid_cell_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ctt::precondition_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ctt::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMismatch;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
