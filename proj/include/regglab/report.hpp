#pragma once

// ExperimentReport: the JSON record every CLI subcommand emits. Objects are
// std::map-backed, so keys serialize sorted and output is deterministic.

#include <cmath>
#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

#include "regglab/bigint.hpp"
#include "regglab/errors.hpp"
#include "regglab/rng.hpp"

#ifndef REGGLAB_VERSION
#define REGGLAB_VERSION "0.0.0"
#endif

namespace regglab {

using Json = nlohmann::json;

inline constexpr const char* report_schema = "v1";
inline constexpr const char* toolkit_version = REGGLAB_VERSION;

struct ExperimentReport {
  std::string command;
  Json params = Json::object();
  SeedSpec seed;
  Json results = Json::object();
  std::map<std::string, bool> checks;  // hard invariants; any false means exit status 1
  std::uint64_t runtime_ms = 0;
  std::string version = toolkit_version;
  std::string schema = report_schema;

  bool all_checks_pass() const {
    for (const auto& [name, ok] : checks)
      if (!ok) return false;
    return true;
  }

  bool operator==(const ExperimentReport&) const = default;
};

inline void to_json(Json& j, const SeedSpec& s) { j = Json{{"base_seed", s.base_seed}, {"stream_index", s.stream_index}}; }

inline void from_json(const Json& j, SeedSpec& s) {
  j.at("base_seed").get_to(s.base_seed);
  j.at("stream_index").get_to(s.stream_index);
}

inline void to_json(Json& j, const ExperimentReport& r) {
  j = Json{{"command", r.command}, {"params", r.params}, {"seed", r.seed}, {"results", r.results},
           {"checks", r.checks}, {"runtime_ms", r.runtime_ms}, {"version", r.version}, {"schema", r.schema}};
}

inline void from_json(const Json& j, ExperimentReport& r) {
  j.at("command").get_to(r.command);
  r.params = j.at("params");
  j.at("seed").get_to(r.seed);
  r.results = j.at("results");
  j.at("checks").get_to(r.checks);
  j.at("runtime_ms").get_to(r.runtime_ms);
  j.at("version").get_to(r.version);
  j.at("schema").get_to(r.schema);
}

inline std::string serialize(const ExperimentReport& r, int indent = 2) { return Json(r).dump(indent); }

inline ExperimentReport parse_report(const std::string& text) {
  try {
    auto r = Json::parse(text).get<ExperimentReport>();
    if (r.schema != report_schema) fail(ErrorCode::ParseError, "unsupported report schema '" + r.schema + "'");
    return r;
  } catch (const Json::exception& e) {
    fail(ErrorCode::ParseError, std::string("malformed report: ") + e.what());
  }
}

/// Exact rationals travel as "num/den" strings next to a double approximation.
inline Json rational_json(const Rational& q) { return Json{{"exact", to_string(q)}, {"value", to_double(q)}}; }

/// Non-finite doubles would serialize as null; keep them readable instead.
inline Json number_json(double x) {
  if (std::isfinite(x)) return x;
  return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

}  // namespace regglab
