#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <string>

#include <json.hpp>

#include "helpers.hpp"

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

// Runs the built binary through the shell; stdin is fed via printf so the
// interactive loop can be scripted.
CliResult run_cli(const std::string& args, const std::string& input = "") {
  std::string cmd = "printf '" + input + "' | ";
  cmd += ctt_test::cli_path() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult res;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, got);
  int rc = pclose(pipe);
  res.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return res;
}

using nlohmann::json;

}  // namespace

TEST_CASE("lines subcommand emits the sorted JSON array") {
  CliResult res = run_cli("lines --n 3 --d 2 --format json");
  CHECK(res.exit_code == 0);
  json j = json::parse(res.out);
  REQUIRE(j.size() == 8);
  CHECK(j[0]["cells"][0] == json::parse("[1,1]"));
}

TEST_CASE("count-plays with --verify reports a matching oracle") {
  CliResult res = run_cli("count-plays --n 3 --d 2 --mode c2t --verify");
  CHECK(res.exit_code == 0);
  json j = json::parse(res.out);
  CHECK(j["formula"] == "1680");
  CHECK(j["enumerated"] == "1680");
  CHECK(j["match"] == true);
}

TEST_CASE("invalid flags exit with the usage code") {
  CHECK(run_cli("count-plays --n 0 --d 2").exit_code == 2);
  CHECK(run_cli("no-such-command").exit_code == 2);
  CHECK(run_cli("count-plays --mode 4t --n 2 --d 2").exit_code == 2);
}

TEST_CASE("resource caps exit with the cap code") {
  CHECK(run_cli("lines --n 1 --d 13").exit_code == 3);
  CHECK(run_cli("count-plays --n 4 --d 2 --mode c2t --verify").exit_code == 3);
}

TEST_CASE("solve subcommand") {
  CliResult res = run_cli("solve --n 2 --d 2 --mode c2t");
  CHECK(res.exit_code == 0);
  json j = json::parse(res.out);
  CHECK(j["value"] == "first_win");
  CHECK(j["plies_to_outcome"] == 3);

  CliResult from_pos = run_cli("solve --mode 3t --position '3^2:XOO.X....'");
  json j2 = json::parse(from_pos.out);
  CHECK(j2["value"] == "first_win");
}

TEST_CASE("enumerate-tp subcommand") {
  CliResult res = run_cli("enumerate-tp --n 2 --d 2 --mode c2t --list");
  CHECK(res.exit_code == 0);
  json j = json::parse(res.out);
  CHECK(j["count"] == 5);
  CHECK(j["strict_subset"] == true);
  CHECK(j["colorings"].size() == 5);
}

TEST_CASE("construct and greedy subcommands") {
  CliResult res = run_cli("construct --n 4 --d 2 --seed 9");
  CHECK(res.exit_code == 0);
  json j = json::parse(res.out);
  CHECK(j["valid"] == true);
  CHECK(j["matches_target"] == true);
  CHECK(j["play"].size() == 16);
  CHECK(j["columns"].size() == 16);

  CliResult greedy = run_cli("greedy --n 3 --d 2 --seed 4");
  CHECK(greedy.exit_code == 0);
  json g = json::parse(greedy.out);
  CHECK((g["result"] == "success" || g["result"] == "failure"));
  CHECK(g.contains("trace"));
}

TEST_CASE("hj-search subcommand carries the advisory lower bound") {
  CliResult res = run_cli("hj-search --n 2 --d 2 --variant all");
  CHECK(res.exit_code == 0);
  json j = json::parse(res.out);
  CHECK(j["result"] == "none_exists");
  CHECK(j["witness"].is_null());
  CHECK(j["lower_bound"]["applicable"] == true);
  CHECK(j["lower_bound"]["value"] < 0.0);  // (2-6)/(4*log2(2)) = -1

  CliResult undefined = run_cli("hj-search --n 1 --d 1 --variant all");
  CHECK(json::parse(undefined.out)["lower_bound"]["applicable"] == false);
}

TEST_CASE("verify subcommand statuses and exit codes") {
  CliResult skipped = run_cli("verify --cap 0");
  CHECK(skipped.exit_code == 1);
  json js = json::parse(skipped.out);
  CHECK(js["skipped"] == 8);
  CHECK(js["passed"] == 0);

  CliResult faulty = run_cli("verify --cap 5000 --inject-fault 'Lemma 1'");
  CHECK(faulty.exit_code == 1);
  json jf = json::parse(faulty.out);
  bool lemma1_failed = false;
  for (const auto& chk : jf["checks"]) {
    if (chk["key"] == "Lemma 1") lemma1_failed = chk["status"] == "FAIL";
  }
  CHECK(lemma1_failed);
}

TEST_CASE("csv format renders key,value rows") {
  CliResult res = run_cli("count-plays --n 3 --d 2 --mode c2t --format csv");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("formula,1680") != std::string::npos);
}

TEST_CASE("interactive play announces wins and rejects bad input") {
  // Human is X on the 2^2 gravity board: floating, occupied, then a win.
  CliResult res = run_cli("play --n 2 --d 2 --mode c2t",
                          "1 2\\n1 1\\n1 1\\n1 2\\n");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("floating") != std::string::npos);
  CHECK(res.out.find("occupied") != std::string::npos);
  CHECK(res.out.find("X wins") != std::string::npos);

  // single-cell game: one move wins immediately
  CliResult solo = run_cli("play --n 1 --d 1 --mode c2t", "1\\n");
  CHECK(solo.exit_code == 0);
  CHECK(solo.out.find("X wins") != std::string::npos);
}

TEST_CASE("interactive play handles column input and abandonment") {
  // A column prefix drops to the lowest open cell in gravity mode.
  CliResult res = run_cli("play --n 2 --d 2 --mode c2t", "1\\n2\\n");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("X wins") != std::string::npos);

  CliResult eof = run_cli("play --n 3 --d 2 --mode c2t", "");
  CHECK(eof.exit_code == 0);
  CHECK(eof.out.find("abandoned") != std::string::npos);

  CHECK(run_cli("play --n 2 --d 4 --mode c2t", "1 1 1 1\\n").exit_code == 2);
}
