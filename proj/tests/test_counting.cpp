#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "ctt/counting.hpp"
#include "helpers.hpp"

using namespace ctt;

TEST_CASE("play count formulas") {
  CHECK(play_count_formula(BoardDims(2, 2), RestrictionMode::Gravity) == 6);
  CHECK(play_count_formula(BoardDims(3, 2), RestrictionMode::Gravity) == 1680);
  CHECK(play_count_formula(BoardDims(2, 3), RestrictionMode::Gravity) == 2520);
  CHECK(play_count_formula(BoardDims(2, 2), RestrictionMode::Unrestricted) == 24);
  CHECK(play_count_formula(BoardDims(1, 1), RestrictionMode::Gravity) == 1);
  CHECK(play_count_formula(BoardDims(1, 1), RestrictionMode::Unrestricted) == 1);
  for (int n = 2; n <= 6; ++n) {
    CHECK(play_count_formula(BoardDims(n, 1), RestrictionMode::Gravity) == 1);
  }
  // the gravity count divides the unrestricted count with quotient (n!)^(n^(d-1))
  for (BoardDims dims : {BoardDims(2, 2), BoardDims(3, 2), BoardDims(2, 3), BoardDims(4, 2)}) {
    bigint quotient = big_pow(big_factorial(static_cast<unsigned>(dims.n)),
                              static_cast<unsigned>(dims.column_count()));
    CHECK(play_count_formula(dims, RestrictionMode::Unrestricted) ==
          play_count_formula(dims, RestrictionMode::Gravity) * quotient);
  }
}

TEST_CASE("exhaustive enumeration agrees with the closed form") {
  CHECK(enumerate_plays(BoardDims(2, 2), RestrictionMode::Gravity, 1000) == 6);
  CHECK(enumerate_plays(BoardDims(2, 2), RestrictionMode::Unrestricted, 1000) == 24);
  CHECK(enumerate_plays(BoardDims(1, 1), RestrictionMode::Gravity, 10) == 1);
  CHECK(enumerate_plays(BoardDims(1, 1), RestrictionMode::Unrestricted, 10) == 1);

  for (BoardDims dims : {BoardDims(2, 2), BoardDims(3, 2), BoardDims(2, 3), BoardDims(1, 4),
                         BoardDims(4, 1), BoardDims(3, 1)}) {
    bigint formula = play_count_formula(dims, RestrictionMode::Gravity);
    REQUIRE(formula <= 1'000'000);
    CHECK(bigint(enumerate_plays(dims, RestrictionMode::Gravity, 1'000'000)) == formula);
  }
}

TEST_CASE("enumeration is shard-count independent") {
  for (int threads : {1, 2, 4, 7}) {
    CHECK(enumerate_plays(BoardDims(3, 2), RestrictionMode::Gravity, 1'000'000, threads) ==
          1680);
    CHECK(enumerate_plays(BoardDims(2, 3), RestrictionMode::Gravity, 1'000'000, threads) ==
          2520);
  }
}

TEST_CASE("play enumeration respects the cap") {
  CHECK_THROWS_AS(enumerate_plays(BoardDims(3, 2), RestrictionMode::Gravity, 100),
                  resource_limit_error);
  CHECK_THROWS_AS(enumerate_plays(BoardDims(4, 2), RestrictionMode::Gravity, 1'000'000),
                  resource_limit_error);  // 63,063,000 gravity plays
}

TEST_CASE("terminal position count formula") {
  CHECK(tp_count_formula(BoardDims(2, 2)) == 6);
  CHECK(tp_count_formula(BoardDims(3, 2)) == 126);
  CHECK(tp_count_formula(BoardDims(1, 1)) == 1);
}

TEST_CASE("unrestricted terminal positions are all halving colorings") {
  auto tps = enumerate_tp(BoardDims(2, 2), RestrictionMode::Unrestricted, 1000);
  CHECK(tps.size() == 6);
  std::set<std::string> distinct;
  for (const Coloring& col : tps) {
    CHECK(std::count(col.labels.begin(), col.labels.end(), PlayerColor::First) == 2);
    distinct.insert(col.label_string());
  }
  CHECK(distinct.size() == 6);

  CHECK(enumerate_tp(BoardDims(3, 2), RestrictionMode::Unrestricted, 1000).size() == 126);
  CHECK(enumerate_tp(BoardDims(1, 1), RestrictionMode::Unrestricted, 10).size() == 1);
}

TEST_CASE("gravity terminal positions on 2^2 are a strict subset") {
  auto gravity = enumerate_tp(BoardDims(2, 2), RestrictionMode::Gravity, 1000);
  auto all = enumerate_tp(BoardDims(2, 2), RestrictionMode::Unrestricted, 1000);

  // Exactly the coloring with the bottom layer all-Second is unreachable.
  CHECK(gravity.size() == 5);
  std::set<std::string> gravity_set, all_set;
  for (const Coloring& c : gravity) gravity_set.insert(c.label_string());
  for (const Coloring& c : all) all_set.insert(c.label_string());
  CHECK(std::includes(all_set.begin(), all_set.end(), gravity_set.begin(), gravity_set.end()));
  CHECK(all_set.count("OOXX") == 1);
  CHECK(gravity_set.count("OOXX") == 0);

  CHECK(enumerate_tp(BoardDims(1, 1), RestrictionMode::Gravity, 10).size() == 1);
}

TEST_CASE("no gravity terminal coloring leaves the bottom layer all-Second") {
  for (BoardDims dims : {BoardDims(2, 2), BoardDims(3, 2), BoardDims(2, 3)}) {
    auto tps = enumerate_tp(dims, RestrictionMode::Gravity, 1'000'000);
    CHECK(bigint(static_cast<std::int64_t>(tps.size())) < tp_count_formula(dims));
    for (const Coloring& col : tps) {
      bool first_in_bottom = false;
      for (std::int64_t c = 0; c < dims.column_count(); ++c) {
        if (col.labels[static_cast<std::size_t>(c)] == PlayerColor::First) {
          first_in_bottom = true;
          break;
        }
      }
      CHECK(first_in_bottom);
      CHECK(std::count(col.labels.begin(), col.labels.end(), PlayerColor::First) ==
            (dims.cell_count() + 1) / 2);
    }
  }
}

TEST_CASE("gravity terminal enumeration is shard-count independent") {
  auto one = enumerate_tp(BoardDims(3, 2), RestrictionMode::Gravity, 1'000'000, 1);
  auto four = enumerate_tp(BoardDims(3, 2), RestrictionMode::Gravity, 1'000'000, 4);
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) CHECK(one[i] == four[i]);
}

TEST_CASE("count reports flag discrepancies") {
  CountReport rep = count_plays_report(BoardDims(3, 2), RestrictionMode::Gravity, true, 10000);
  CHECK(rep.match());
  CHECK(rep.formula_value == 1680);
  REQUIRE(rep.enumerated_value.has_value());
  CHECK(*rep.enumerated_value == 1680);

  rep.enumerated_value = bigint(1679);
  CHECK_FALSE(rep.match());

  CountReport formula_only =
      count_plays_report(BoardDims(4, 3), RestrictionMode::Gravity, false, 0);
  CHECK(formula_only.match());
  CHECK_FALSE(formula_only.enumerated_value.has_value());
}
