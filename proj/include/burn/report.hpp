#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

namespace burn {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "burnkit";
inline constexpr const char* kToolVersion = "0.1.0";

// Everything that affects a run's output. Reports embed it so identical
// configs produce byte-identical reports (no timestamps, no hostnames).
struct RunConfig {
  std::string command;       // burn | pf | pf-verify | chain | ln
  std::string target;        // graph spec, forest lengths, or n
  std::string m_arg;         // "4" or "3..8"; empty when not applicable
  int jobs = 1;
  std::uint64_t budget_nodes = 0;
  double budget_secs = 0.0;
  std::uint64_t seed = 1;
  std::string format = "text";
  std::string cache_path;
  std::string evidence_path;
};

Json config_json(const RunConfig& c);

// Wraps a result object with tool name, version, and the config.
Json make_report(const RunConfig& c, Json result);

std::string csv_escape(const std::string& s);

// "4" -> [4,4]; "3..8" -> [3,8]. False on anything else or lo > hi.
bool parse_range(const std::string& s, int& lo, int& hi);

}  // namespace burn
