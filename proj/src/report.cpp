#include "burn/report.hpp"

#include <cctype>

namespace burn {

Json config_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["target"] = c.target;
  if (!c.m_arg.empty()) j["m"] = c.m_arg;
  j["jobs"] = c.jobs;
  if (c.budget_nodes > 0) j["budget_nodes"] = c.budget_nodes;
  if (c.budget_secs > 0.0) j["budget_secs"] = c.budget_secs;
  j["seed"] = c.seed;
  j["format"] = c.format;
  if (!c.cache_path.empty()) j["cache"] = c.cache_path;
  if (!c.evidence_path.empty()) j["evidence"] = c.evidence_path;
  return j;
}

Json make_report(const RunConfig& c, Json result) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["config"] = config_json(c);
  j["result"] = std::move(result);
  return j;
}

std::string csv_escape(const std::string& s) {
  bool needs_quotes = false;
  for (char ch : s)
    if (ch == ',' || ch == '"' || ch == '\n' || ch == '\r') {
      needs_quotes = true;
      break;
    }
  if (!needs_quotes) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

bool parse_range(const std::string& s, int& lo, int& hi) {
  if (s.empty()) return false;
  auto is_number = [](const std::string& t) {
    if (t.empty()) return false;
    for (char ch : t)
      if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
  };
  auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      if (!is_number(s)) return false;
      lo = hi = std::stoi(s);
      return true;
    }
    std::string l = s.substr(0, dots), h = s.substr(dots + 2);
    if (!is_number(l) || !is_number(h)) return false;
    lo = std::stoi(l);
    hi = std::stoi(h);
  } catch (const std::exception&) {
    return false;
  }
  return lo <= hi;
}

}  // namespace burn
