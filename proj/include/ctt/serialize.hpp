#ifndef CTT_SERIALIZE_HPP
#define CTT_SERIALIZE_HPP

#include <string>

#include <json.hpp>

#include "ctt/coloring.hpp"
#include "ctt/counting.hpp"
#include "ctt/game.hpp"
#include "ctt/solver.hpp"

namespace ctt {

using json = nlohmann::json;

inline void to_json(json& j, const Cell& cell) { j = cell.coords; }
inline void from_json(const json& j, Cell& cell) {
  cell.coords = j.get<std::vector<int>>();
}

inline void to_json(json& j, const ColumnId& col) { j = col.prefix; }
inline void from_json(const json& j, ColumnId& col) {
  col.prefix = j.get<std::vector<int>>();
}

inline void to_json(json& j, const GeometricLine& line) {
  j = json{{"cells", line.cells}, {"direction", line.direction}};
}
inline void from_json(const json& j, GeometricLine& line) {
  j.at("cells").get_to(line.cells);
  j.at("direction").get_to(line.direction);
}

inline void to_json(json& j, const Play& play) { j = play.moves; }
inline void from_json(const json& j, Play& play) {
  play.moves = j.get<std::vector<Cell>>();
}

inline json lines_to_json(const LineSet& lines) {
  json arr = json::array();
  for (std::size_t id = 0; id < lines.size(); ++id) {
    arr.push_back(lines.materialize(id));
  }
  return arr;
}

// Positions and colorings travel as "<n>^<d>:<flat labels>".
inline Position position_from_string(const std::string& s) {
  auto caret = s.find('^');
  auto colon = s.find(':');
  if (caret == std::string::npos || colon == std::string::npos || caret > colon) {
    throw invalid_cell_error("expected '<n>^<d>:<labels>', got '" + s + "'");
  }
  BoardDims dims(std::stoi(s.substr(0, caret)), std::stoi(s.substr(caret + 1, colon - caret - 1)));
  return Position::from_labels(dims, s.substr(colon + 1));
}

inline Coloring coloring_from_string(const std::string& s) {
  auto caret = s.find('^');
  auto colon = s.find(':');
  if (caret == std::string::npos || colon == std::string::npos || caret > colon) {
    throw invalid_cell_error("expected '<n>^<d>:<labels>', got '" + s + "'");
  }
  BoardDims dims(std::stoi(s.substr(0, caret)), std::stoi(s.substr(caret + 1, colon - caret - 1)));
  return Coloring::from_labels(dims, s.substr(colon + 1));
}

// Exact integers render as decimal strings; they routinely exceed 64 bits.
inline json count_report_to_json(const CountReport& rep, bool include_elapsed = true) {
  json j{{"n", rep.dims.n},
         {"d", rep.dims.d},
         {"mode", mode_name(rep.mode)},
         {"formula", rep.formula_value.str()},
         {"enumerated", rep.enumerated_value ? json(rep.enumerated_value->str()) : json()},
         {"match", rep.match()}};
  if (include_elapsed) j["elapsed_ms"] = rep.elapsed.count();
  return j;
}

inline std::string layer_choice_name(LayerChoice c) {
  return c == LayerChoice::Base ? "base" : "flipped";
}

inline LayerChoice layer_choice_from_name(const std::string& s) {
  if (s == "base") return LayerChoice::Base;
  if (s == "flipped") return LayerChoice::Flipped;
  throw precondition_error("unknown layer choice '" + s + "'");
}

inline void to_json(json& j, const LayerAssignment& f) {
  j = json::array();
  for (LayerChoice c : f.f) j.push_back(layer_choice_name(c));
}
inline void from_json(const json& j, LayerAssignment& f) {
  f.f.clear();
  for (const auto& s : j) f.f.push_back(layer_choice_from_name(s.get<std::string>()));
}

inline void to_json(json& j, const GreedyStep& s) {
  j = json{{"layer", s.layer},
           {"k_before", s.k_before},
           {"x", s.x},
           {"y", s.y},
           {"choice", s.choice == GreedyChoice::Repeat ? "repeat" : "flip"},
           {"k_after", s.k_after}};
}

inline json greedy_result_to_json(const GreedyResult& r) {
  json j{{"result", r.success ? "success" : "failure"}, {"trace", r.trace}};
  if (r.success) {
    j["assignment"] = *r.assignment;
    j["coloring"] = r.coloring->to_string();
  } else {
    j["reason"] = r.failure_reason;
  }
  return j;
}

inline json hj_result_to_json(int n, int d, HjVariant variant, const HjSearchResult& r) {
  return json{{"n", n},
              {"d", d},
              {"variant", variant_name(variant)},
              {"result", r.proper_exists ? "proper_exists" : "none_exists"},
              {"witness", r.witness ? json(r.witness->to_string()) : json()},
              {"space", r.space.str()}};
}

inline json solve_result_to_json(const SolveResult& r, bool include_stats = true) {
  json j{{"n", r.dims.n},
         {"d", r.dims.d},
         {"mode", mode_name(r.mode)},
         {"value", game_value_name(r.value)},
         {"plies_to_outcome", r.plies_to_outcome},
         {"pv", r.principal_variation},
         {"seed", r.seed}};
  if (include_stats) {
    j["nodes"] = r.nodes_searched;
    j["elapsed_ms"] = r.elapsed.count();
  }
  return j;
}

inline json lower_bound_to_json(int n, const HjLowerBound& b) {
  return json{{"n", n},
              {"applicable", b.applicable},
              {"symbolic", b.symbolic},
              {"value", b.applicable ? json(b.value) : json()}};
}

}  // namespace ctt

#endif
