#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "looptiles/board.hpp"
#include "looptiles/search.hpp"
#include "looptiles/tracer.hpp"
#include "looptiles/verifier.hpp"

namespace looptiles {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Configuration: {rows, cols, mode, policy, codes: [[int]]}

inline json config_to_json(const Configuration& c) {
  json codes = json::array();
  for (int r = 0; r < c.rows(); ++r) {
    json row = json::array();
    for (int col = 0; col < c.cols(); ++col) row.push_back(c.at(r, col).value());
    codes.push_back(std::move(row));
  }
  return {{"rows", c.rows()},
          {"cols", c.cols()},
          {"mode", mode_name(c.mode())},
          {"policy", policy_name(c.policy())},
          {"codes", std::move(codes)}};
}

inline Configuration config_from_json(const json& j) {
  using K = ConfigError::Kind;
  if (!j.is_object()) throw ConfigError(K::Malformed, "configuration must be a JSON object");
  auto int_field = [&](const char* name) -> int {
    if (!j.contains(name) || !j[name].is_number_integer()) {
      throw ConfigError(K::Malformed, std::string("missing integer field '") + name + "'");
    }
    return j[name].get<int>();
  };
  auto str_field = [&](const char* name, const char* fallback) -> std::string {
    if (!j.contains(name)) return fallback;
    if (!j[name].is_string()) {
      throw ConfigError(K::Malformed, std::string("field '") + name + "' must be a string");
    }
    return j[name].get<std::string>();
  };
  const int rows = int_field("rows");
  const int cols = int_field("cols");
  if (rows < 1 || cols < 1) throw ConfigError(K::BadDims, "rows and cols must be positive");
  const BoundaryMode mode = parse_mode(str_field("mode", "torus"));
  const TilePolicy policy = parse_policy(str_field("policy", "free"));
  if (!j.contains("codes") || !j["codes"].is_array()) {
    throw ConfigError(K::Malformed, "missing 'codes' array");
  }
  const json& codes = j["codes"];
  if (static_cast<int>(codes.size()) != rows) {
    throw ConfigError(K::RaggedRows, "codes has " + std::to_string(codes.size()) +
                                         " rows, expected " + std::to_string(rows));
  }
  std::vector<TileCode> flat;
  for (std::size_t r = 0; r < codes.size(); ++r) {
    const json& row = codes[r];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      throw ConfigError(K::RaggedRows, "codes row " + std::to_string(r) + " must have " +
                                           std::to_string(cols) + " entries");
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (!row[c].is_number_integer() || row[c].get<int>() < 0 || row[c].get<int>() > 15) {
        throw ConfigError(K::MalformedDigit, "code at row " + std::to_string(r) + ", col " +
                                                 std::to_string(c) + " must be an integer 0..15");
      }
      flat.emplace_back(row[c].get<int>());
    }
  }
  return Configuration(Dims{rows, cols}, mode, policy, std::move(flat));
}

/// Either the structured JSON object or the grid text form.
inline Configuration parse_config(std::string_view text, ParseDefaults defaults = {}) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ConfigError(ConfigError::Kind::Malformed, "invalid JSON");
    return config_from_json(j);
  }
  return parse_grid(text, defaults);
}

inline std::string serialize_config(const Configuration& c) { return serialize_grid(c); }

// ---------------------------------------------------------------------------
// Analysis report

struct LoopRecord {
  int length = 0;
  std::optional<Winding> winding;  // torus mode only
  int net_deflection = 0;
  ArcTally tally;
  bool weave_ok = true;
  std::vector<std::pair<int, int>> cells;
  friend bool operator==(const LoopRecord&, const LoopRecord&) = default;
};

struct SuiteSummary {
  bool ok = true;
  std::map<std::string, std::string> checks;  // name -> pass | fail | skipped
  std::int64_t failures = 0;
  friend bool operator==(const SuiteSummary&, const SuiteSummary&) = default;
};

struct AnalysisReport {
  Configuration config;
  int loop_count = 0;
  int total_crossings = 0;
  bool parity_ok = true;
  std::vector<LoopRecord> loops;
  SuiteSummary suite;
  friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

inline SuiteSummary summarize(const VerificationReport& r) {
  SuiteSummary s;
  s.ok = r.ok();
  s.failures = r.failures();
  for (const auto& [name, t] : r.checks) s.checks[name] = std::string(status_name(t.status()));
  return s;
}

inline AnalysisReport analyze(const Configuration& config) {
  const LoopSet set = trace(config);
  AnalysisReport rep;
  rep.config = config;
  rep.loop_count = static_cast<int>(set.loops.size());
  rep.total_crossings = set.total_crossings;
  rep.parity_ok = (rep.loop_count - rep.total_crossings) % 2 == 0;
  for (const Loop& l : set.loops) {
    LoopRecord rec;
    rec.length = l.length();
    if (config.mode() == BoundaryMode::Torus) rec.winding = winding(l, set.dims);
    rec.net_deflection = l.net_deflection;
    rec.tally = l.tally;
    rec.weave_ok = alternates_cyclically(weave_sequence(l));
    rec.cells = cells_visited(l);
    rep.loops.push_back(std::move(rec));
  }
  rep.suite = summarize(run_suite(config));
  return rep;
}

inline json tally_to_json(const ArcTally& t) {
  json j = json::object();
  for (std::size_t k = 0; k < 8; ++k) j[std::string(kArcTypeNames[k])] = t.counts[k];
  return j;
}

inline ArcTally tally_from_json(const json& j) {
  ArcTally t;
  for (std::size_t k = 0; k < 8; ++k) t.counts[k] = j.at(std::string(kArcTypeNames[k])).get<int>();
  return t;
}

inline json report_to_json(const AnalysisReport& r) {
  json loops = json::array();
  for (const auto& l : r.loops) {
    json cells = json::array();
    for (auto [row, col] : l.cells) cells.push_back({row, col});
    json rec = {{"length", l.length},
                {"netDeflection", l.net_deflection},
                {"tally", tally_to_json(l.tally)},
                {"weaveOk", l.weave_ok},
                {"cells", std::move(cells)}};
    if (l.winding) {
      rec["winding"] = {l.winding->wx, l.winding->wy};
      rec["class"] = l.winding->planar() ? "planar" : "torus";
    } else {
      rec["winding"] = nullptr;
    }
    loops.push_back(std::move(rec));
  }
  return {{"schema", kSchemaVersion},
          {"config", config_to_json(r.config)},
          {"loopCount", r.loop_count},
          {"totalCrossings", r.total_crossings},
          {"parityOk", r.parity_ok},
          {"loops", std::move(loops)},
          {"suite", {{"ok", r.suite.ok}, {"failures", r.suite.failures}, {"checks", r.suite.checks}}}};
}

inline AnalysisReport report_from_json(const json& j) {
  AnalysisReport r;
  r.config = config_from_json(j.at("config"));
  r.loop_count = j.at("loopCount").get<int>();
  r.total_crossings = j.at("totalCrossings").get<int>();
  r.parity_ok = j.at("parityOk").get<bool>();
  for (const auto& l : j.at("loops")) {
    LoopRecord rec;
    rec.length = l.at("length").get<int>();
    if (!l.at("winding").is_null()) rec.winding = Winding{l["winding"][0], l["winding"][1]};
    rec.net_deflection = l.at("netDeflection").get<int>();
    rec.tally = tally_from_json(l.at("tally"));
    rec.weave_ok = l.at("weaveOk").get<bool>();
    for (const auto& c : l.at("cells")) rec.cells.emplace_back(c[0].get<int>(), c[1].get<int>());
    r.loops.push_back(std::move(rec));
  }
  const json& s = j.at("suite");
  r.suite.ok = s.at("ok").get<bool>();
  r.suite.failures = s.at("failures").get<std::int64_t>();
  r.suite.checks = s.at("checks").get<std::map<std::string, std::string>>();
  return r;
}

// ---------------------------------------------------------------------------
// Verification and search results

inline json verification_to_json(const VerificationReport& r) {
  json checks = json::object();
  for (const auto& [name, t] : r.checks) {
    checks[name] = {{"status", status_name(t.status())},
                    {"evaluated", t.evaluated},
                    {"failures", t.failures},
                    {"skipped", t.skipped}};
  }
  json cx = json::array();
  for (const auto& c : r.counterexamples) {
    json e = {{"check", c.check}, {"config", c.config}, {"loop", c.loop_index}, {"detail", c.detail}};
    e["seed"] = c.seed ? json(*c.seed) : json(nullptr);
    cx.push_back(std::move(e));
  }
  json loop_hist = json::object();
  for (auto [k, v] : r.loop_count_hist) loop_hist[std::to_string(k)] = v;
  json len_hist = json::object();
  for (auto [k, v] : r.length_hist) len_hist[std::to_string(k)] = v;
  return {{"schema", kSchemaVersion},
          {"ok", r.ok()},
          {"configs", r.configs},
          {"loops", r.loops},
          {"crossings", r.crossings},
          {"checks", std::move(checks)},
          {"counterexamples", std::move(cx)},
          {"loopCountHistogram", std::move(loop_hist)},
          {"lengthHistogram", std::move(len_hist)}};
}

inline json search_to_json(const SearchResult& r) {
  return {{"schema", kSchemaVersion},
          {"objective", objective_name(r.objective)},
          {"config", config_to_json(r.best_config)},
          {"configText", serialize_grid(r.best_config)},
          {"score", r.best_score},
          {"seed", r.seed},
          {"evaluations", r.evaluations},
          {"improvements", r.improvements},
          {"restartBest", r.restart_best},
          {"restartEvaluations", r.restart_evals}};
}

inline json tiles_to_json() {
  json tiles = json::array();
  for (int v = 0; v < 16; ++v) {
    const TileCode code(v);
    json pairs = json::array();
    for (auto [a, b] : kMatchings[static_cast<std::size_t>(v)].pairs()) {
      pairs.push_back({point_name(a), point_name(b)});
    }
    tiles.push_back({{"code", v},
                     {"hex", std::string(1, code.hex())},
                     {"binary", code.binary()},
                     {"crossings", crossing_count(code)},
                     {"pairs", std::move(pairs)}});
  }
  return {{"schema", kSchemaVersion}, {"tiles", std::move(tiles)}};
}

}  // namespace looptiles
