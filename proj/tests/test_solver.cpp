#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "ctt/serialize.hpp"
#include "ctt/solver.hpp"
#include "ctt/verify.hpp"
#include "helpers.hpp"

using namespace ctt;

TEST_CASE("naive oracle on the classical cases") {
  CHECK(naive_solve(Position(BoardDims(3, 2)), RestrictionMode::Unrestricted) ==
        GameValue::Draw);
  CHECK(naive_solve(Position(BoardDims(1, 1)), RestrictionMode::Gravity) ==
        GameValue::FirstWin);

  // forced win in one: First owns two diagonal cells and moves
  BoardDims dims(3, 2);
  Position pos = Position::from_labels(dims, "XOO.X....");
  CHECK(naive_solve(pos, RestrictionMode::Unrestricted) == GameValue::FirstWin);
}

TEST_CASE("two-sided boards with a single full-board line are draws") {
  for (int n = 2; n <= 6; ++n) {
    Position pos(BoardDims(n, 1));
    CHECK(naive_solve(pos, RestrictionMode::Gravity) == GameValue::Draw);
    CHECK(naive_solve(pos, RestrictionMode::Unrestricted) == GameValue::Draw);
    SolveResult res = solve(pos, RestrictionMode::Gravity);
    CHECK(res.value == GameValue::Draw);
    CHECK(res.plies_to_outcome == n);
  }
}

TEST_CASE("side length two always falls to the first player on move three") {
  // Any two distinct cells of [2]^d form a geometric line.
  for (int d = 2; d <= 4; ++d) {
    for (RestrictionMode mode : {RestrictionMode::Unrestricted, RestrictionMode::Gravity}) {
      SolveResult res = solve(Position(BoardDims(2, d)), mode);
      CHECK(res.value == GameValue::FirstWin);
      CHECK(res.plies_to_outcome == 3);
    }
  }
}

TEST_CASE("engine equals the naive oracle on every reachable position") {
  SolverConfig config;
  config.tt_bits = 12;
  for (BoardDims dims : {BoardDims(2, 2), BoardDims(3, 1), BoardDims(2, 3), BoardDims(5, 1)}) {
    for (RestrictionMode mode : {RestrictionMode::Unrestricted, RestrictionMode::Gravity}) {
      for (const Position& pos : reachable_positions(dims, mode, 1'000'000)) {
        GameValue reference = naive_solve(pos, mode);
        CHECK(solve(pos, mode, config).value == reference);
      }
    }
  }
}

TEST_CASE("solved positions know their winner without further play") {
  BoardDims dims(3, 2);
  Position won = Position::from_labels(dims, "XXXOO....");
  SolveResult res = solve(won, RestrictionMode::Unrestricted);
  CHECK(res.value == GameValue::FirstWin);
  CHECK(res.plies_to_outcome == 0);
  CHECK(res.principal_variation.size() == 0);
  CHECK(naive_solve(won, RestrictionMode::Unrestricted) == GameValue::FirstWin);

  Position full = Position::from_labels(BoardDims(2, 1), "XO");
  CHECK(solve(full, RestrictionMode::Gravity).value == GameValue::Draw);
}

TEST_CASE("best move") {
  BoardDims dims(3, 2);
  // First completes the diagonal at (3,3)
  Position pos = Position::from_labels(dims, "XOO.X....");
  CHECK(best_move(pos, RestrictionMode::Unrestricted) == Cell{3, 3});

  Position solo(BoardDims(1, 1));
  CHECK(best_move(solo, RestrictionMode::Gravity) == Cell{1});

  // From the empty 3^2 board every value-preserving reply keeps the draw.
  Cell opening = best_move(Position(dims), RestrictionMode::Unrestricted);
  Position after = apply_move(Position(dims), opening, RestrictionMode::Unrestricted);
  CHECK(solve(after, RestrictionMode::Unrestricted).value == GameValue::Draw);

  CHECK_THROWS_AS(best_move(Position::from_labels(BoardDims(2, 1), "XO"),
                            RestrictionMode::Gravity),
                  precondition_error);
}

TEST_CASE("values are independent of table size and principal variations replay") {
  for (RestrictionMode mode : {RestrictionMode::Unrestricted, RestrictionMode::Gravity}) {
    SolverConfig small, large;
    small.tt_bits = 8;
    large.tt_bits = 18;
    Position pos(BoardDims(3, 2));
    SolveResult a = solve(pos, mode, small);
    SolveResult b = solve(pos, mode, large);
    CHECK(a.value == b.value);
    CHECK(a.plies_to_outcome == b.plies_to_outcome);
    CHECK(a.principal_variation == b.principal_variation);

    // replaying the PV reaches positions that re-solve to the same value
    Position cursor = pos;
    LineSet lines = enumerate_lines(pos.dims);
    for (const Cell& mv : a.principal_variation.moves) {
      cursor = apply_move(cursor, mv, mode);
      CHECK(solve(cursor, mode, small).value == a.value);
    }
    CHECK(static_cast<int>(a.principal_variation.size()) == a.plies_to_outcome);
    if (a.value == GameValue::Draw) {
      CHECK(cursor.move_count == pos.dims.cell_count());
      CHECK_FALSE(find_winning_line(cursor, lines).has_value());
    } else {
      auto win = find_winning_line(cursor, lines);
      REQUIRE(win.has_value());
      CHECK(win->second ==
            (a.value == GameValue::FirstWin ? PlayerColor::First : PlayerColor::Second));
    }
  }
}

TEST_CASE("node cap aborts the search") {
  SolverConfig config;
  config.node_cap = 10;
  CHECK_THROWS_AS(solve(Position(BoardDims(3, 2)), RestrictionMode::Unrestricted, config),
                  resource_limit_error);
}

TEST_CASE("boards beyond the solver cell cap are rejected") {
  CHECK_THROWS_AS(solve(Position(BoardDims(3, 4)), RestrictionMode::Gravity),
                  resource_limit_error);
}

TEST_CASE("gravity solving rejects positions with floating stones") {
  // X floats at layer 2 of column 2 while (2,1) is empty.
  Position holey = Position::from_labels(BoardDims(2, 2), "O.XX");
  CHECK_THROWS_AS(solve(holey, RestrictionMode::Gravity), precondition_error);
  CHECK_THROWS_AS(naive_solve(holey, RestrictionMode::Gravity), precondition_error);
  // the same position is fine without gravity
  CHECK(naive_solve(holey, RestrictionMode::Unrestricted) == GameValue::FirstWin);
}

TEST_CASE("golden results stay reproducible") {
  namespace fs = std::filesystem;
  fs::path dir = fs::path(CTT_SOURCE_DIR) / "tests" / "golden";
  int checked = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".json") continue;
    std::ifstream in(entry.path());
    json golden = json::parse(in);

    BoardDims dims(golden.at("n").get<int>(), golden.at("d").get<int>());
    RestrictionMode mode = golden.at("mode").get<std::string>() == "c2t"
                               ? RestrictionMode::Gravity
                               : RestrictionMode::Unrestricted;
    SolverConfig config;
    config.seed = golden.at("seed").get<std::uint64_t>();
    if (dims.cell_count() > 16) config.tt_bits = 22;
    SolveResult res = solve(Position(dims), mode, config);

    CHECK(game_value_name(res.value) == golden.at("value").get<std::string>());
    CHECK(res.plies_to_outcome == golden.at("plies_to_outcome").get<int>());
    CHECK(json(res.principal_variation) == golden.at("pv"));
    ++checked;
  }
  CHECK(checked == 9);
}
