#pragma once

// Aggregated compliance report over every enabled rule, plus its JSON and
// text renderings.

#include <map>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "tacho/restrictions.hpp"
#include "tacho/timeline.hpp"
#include "tacho/weekly_regime.hpp"

namespace tacho {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

struct Report {
  std::string driver_id;
  CheckConfig config;
  std::map<Rule, Verdict> verdicts;

  bool overall_legal() const {
    for (const auto& [rule, v] : verdicts) {
      if (!v.legal()) return false;
    }
    return true;
  }
};

inline Verdict check_rule(Rule rule, const EventList& el, const CheckConfig& cfg) {
  switch (rule) {
    case Rule::F1: return check_f1(el);
    case Rule::F2: return check_f2(el);
    case Rule::F3: return check_f3(el, cfg);
    case Rule::DailyDriving: return check_daily_driving(el);
    case Rule::DailyRest: return check_daily_rest(el, cfg);
    case Rule::WeeklyRegime: return check_weekly_regime(el, cfg);
  }
  return {};
}

inline Report check_all(const EventList& el, const CheckConfig& cfg = {}) {
  Report r{el.driver_id(), cfg, {}};
  for (Rule rule : cfg.rules) r.verdicts[rule] = check_rule(rule, el, cfg);
  return r;
}

enum class ReportFormat { Json, Text };

inline nlohmann::json violation_json(const Violation& v) {
  return {{"rule", std::string(to_string(v.rule))},
          {"start", v.start.seconds},
          {"end", v.end.seconds},
          {"measured", v.measured.seconds},
          {"limit", v.limit.seconds},
          {"message", v.message}};
}

inline nlohmann::json verdict_json(const Verdict& v) {
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& x : v.violations) violations.push_back(violation_json(x));
  return {{"legal", v.legal()}, {"violations", std::move(violations)}};
}

inline nlohmann::json report_json(const Report& r) {
  nlohmann::json rules = nlohmann::json::array();
  for (Rule rule : r.config.rules) rules.push_back(std::string(to_string(rule)));
  nlohmann::json verdicts = nlohmann::json::object();
  for (const auto& [rule, v] : r.verdicts) verdicts[std::string(to_string(rule))] = verdict_json(v);
  return {{"schema", kReportSchema},
          {"tool_version", kToolVersion},
          {"driver_id", r.driver_id},
          {"overall_legal", r.overall_legal()},
          {"config", {{"boundary", std::string(to_string(r.config.boundary))}, {"rules", rules}}},
          {"verdicts", std::move(verdicts)}};
}

// JSON keys come out sorted (nlohmann::json stores objects in a std::map).
inline std::string emit_report(const Report& r, ReportFormat format) {
  if (format == ReportFormat::Json) return report_json(r).dump(2) + "\n";

  std::ostringstream os;
  os << "driver " << (r.driver_id.empty() ? "-" : r.driver_id) << ": "
     << (r.overall_legal() ? "LEGAL" : "ILLEGAL") << " (boundary " << to_string(r.config.boundary)
     << ")\n";
  for (const auto& [rule, v] : r.verdicts) {
    if (v.legal()) {
      os << "  " << to_string(rule) << ": ok\n";
      continue;
    }
    for (const auto& x : v.violations) {
      os << "  " << to_string(rule) << ": [" << x.start.seconds << ", " << x.end.seconds
         << ") measured " << x.measured.seconds << " s, limit " << x.limit.seconds << " s: "
         << x.message << "\n";
    }
  }
  return os.str();
}

}  // namespace tacho
