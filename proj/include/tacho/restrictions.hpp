#pragma once

// Driving-time and rest-period restrictions over an EventList.
//
// Every limit is inclusive on the legal side. Partial edge segments are
// checked against the same bounds as complete ones: exceeding a maximum is
// final whatever happened outside the recorded window.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tacho/segmentation.hpp"
#include "tacho/timeline.hpp"

namespace tacho {

enum class Rule { F1, F2, F3, DailyDriving, DailyRest, WeeklyRegime };

inline constexpr std::array<Rule, 6> kAllRules = {Rule::F1,           Rule::F2,
                                                  Rule::F3,           Rule::DailyDriving,
                                                  Rule::DailyRest,    Rule::WeeklyRegime};

inline constexpr std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::F1: return "f1";
    case Rule::F2: return "f2";
    case Rule::F3: return "f3";
    case Rule::DailyDriving: return "daily_driving";
    case Rule::DailyRest: return "daily_rest";
    case Rule::WeeklyRegime: return "weekly_regime";
  }
  return "?";
}

inline std::optional<Rule> parse_rule(std::string_view s) {
  for (Rule r : kAllRules) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

// Open: assume the most favourable behaviour outside the analysed window.
// Closed: assume nothing exists outside it.
enum class Boundary { Open, Closed };

inline constexpr std::string_view to_string(Boundary b) {
  return b == Boundary::Open ? "open" : "closed";
}

struct CheckConfig {
  Boundary boundary{Boundary::Open};
  std::set<Rule> rules{kAllRules.begin(), kAllRules.end()};
};

struct Violation {
  Rule rule{Rule::F1};
  Timestamp start;
  Timestamp end;
  Duration measured;
  Duration limit;
  std::string message;

  bool operator==(const Violation&) const = default;
};

struct Verdict {
  std::vector<Violation> violations;

  bool legal() const { return violations.empty(); }
  bool operator==(const Verdict&) const = default;
};

// Limits.
inline constexpr Duration kMaxDailyDriving = Duration::hours(10);
inline constexpr Duration kStandardDailyDriving = Duration::hours(9);
inline constexpr int kMaxExtendedDaysPerWeek = 2;
inline constexpr Duration kMaxShiftDriving = Duration::minutes(270);
inline constexpr Duration kMaxWeekWork = Duration::hours(6 * 24);
inline constexpr Duration kDailyRestWindow = Duration::hours(24);

inline constexpr Duration kReducedDailyRest = Duration::hours(9);
inline constexpr Duration kRegularDailyRest = Duration::hours(11);
inline constexpr Duration kReducedWeeklyRest = Duration::hours(24);
inline constexpr Duration kRegularWeeklyRest = Duration::hours(45);

enum class RestClass { NotDailyRest, ReducedDaily, RegularDaily, ReducedWeekly, RegularWeekly };

inline constexpr RestClass classify_rest(Duration d) {
  if (d >= kRegularWeeklyRest) return RestClass::RegularWeekly;
  if (d >= kReducedWeeklyRest) return RestClass::ReducedWeekly;
  if (d >= kRegularDailyRest) return RestClass::RegularDaily;
  if (d >= kReducedDailyRest) return RestClass::ReducedDaily;
  return RestClass::NotDailyRest;
}

inline constexpr RestClass classify_rest(const RestBlock& r) { return classify_rest(r.duration); }

inline constexpr std::string_view to_string(RestClass c) {
  switch (c) {
    case RestClass::NotDailyRest: return "not_daily_rest";
    case RestClass::ReducedDaily: return "reduced_daily";
    case RestClass::RegularDaily: return "regular_daily";
    case RestClass::ReducedWeekly: return "reduced_weekly";
    case RestClass::RegularWeekly: return "regular_weekly";
  }
  return "?";
}

namespace detail {

inline std::string seconds_text(Duration d) { return std::to_string(d.seconds) + " s"; }

inline Verdict check_segment_bound(const EventList& el, SegmentKind kind, Rule rule, Duration limit,
                                   Duration (*measure)(const Segment&), std::string_view what) {
  Verdict v;
  for_each_segment(el, kind, [&](const Segment& s) {
    const Duration m = measure(s);
    if (m > limit) {
      v.violations.push_back({rule, s.start(), s.end(), m, limit,
                              std::string(what) + " " + seconds_text(m) + " exceeds " +
                                  seconds_text(limit)});
    }
  });
  return v;
}

inline Duration segment_driving(const Segment& s) { return driving_time(s); }
inline Duration segment_total(const Segment& s) { return total_time(s); }

}  // namespace detail

// Daily driving never above 10 h, per rolling Day.
inline Verdict check_f1(const EventList& el) {
  return detail::check_segment_bound(el, SegmentKind::Day, Rule::F1, kMaxDailyDriving,
                                     &detail::segment_driving, "daily driving");
}

// At most 4.5 h of driving between breaks of 45 min.
inline Verdict check_f2(const EventList& el) {
  return detail::check_segment_bound(el, SegmentKind::Shift, Rule::F2, kMaxShiftDriving,
                                     &detail::segment_driving, "driving without a 45 min break");
}

// At most six 24-hour periods between weekly rests. The boundary flag has no
// effect here: a Week that already exceeds the bound cannot be repaired by
// anything outside the window.
inline Verdict check_f3(const EventList& el, const CheckConfig& = {}) {
  return detail::check_segment_bound(el, SegmentKind::Week, Rule::F3, kMaxWeekWork, &detail::segment_total,
                                     "time between weekly rests");
}

// f1, plus: within each calendar week at most two Days drive more than 9 h.
// A Day belongs to the calendar week containing the start of its first
// interior event.
inline Verdict check_daily_driving(const EventList& el) {
  Verdict v = check_f1(el);
  for (auto& violation : v.violations) violation.rule = Rule::DailyDriving;

  // Every Day beyond the second extension of its calendar week is reported.
  std::map<std::int64_t, int> extended;
  for (const auto& d : days_of(el)) {
    const Duration driven = driving_time(d);
    if (driven <= kStandardDailyDriving) continue;
    const std::int64_t week = week_index(d.interior_start());
    const int n = ++extended[week];
    if (n > kMaxExtendedDaysPerWeek) {
      v.violations.push_back({Rule::DailyDriving, d.start(), d.end(), driven,
                              kStandardDailyDriving,
                              "extension " + std::to_string(n) + " in calendar week " +
                                  std::to_string(week) + ": " + detail::seconds_text(driven) +
                                  " above " + detail::seconds_text(kStandardDailyDriving) +
                                  " (at most " + std::to_string(kMaxExtendedDaysPerWeek) +
                                  " per week)"});
    }
  }
  std::stable_sort(v.violations.begin(), v.violations.end(),
                   [](const Violation& a, const Violation& b) { return a.start < b.start; });
  return v;
}

// A new daily rest (>= 9 h) must have begun within 24 h of the end of the
// previous one. The timeline start counts as the end of a previous rest.
//
// Open boundary: a window cut short by the end of the timeline passes, and a
// rest still running at the end counts as begun whatever its recorded length.
// Closed boundary: both need a qualifying rest inside the recorded data.
inline Verdict check_daily_rest(const EventList& el, const CheckConfig& cfg = {}) {
  Verdict v;
  if (el.empty()) return v;

  const Timestamp finish = el.finish();
  Timestamp anchor = el.start();
  auto report = [&](Timestamp from, Duration measured) {
    v.violations.push_back({Rule::DailyRest, from, from + kDailyRestWindow, measured,
                            kDailyRestWindow,
                            "no daily rest began within 24 h after " +
                                std::to_string(from.seconds) + " (next after " +
                                detail::seconds_text(measured) + ")"});
  };

  for (const auto& r : rest_blocks(el)) {
    const bool running_at_end = r.end() == finish;
    const bool qualifies = r.duration >= kReducedDailyRest ||
                           (running_at_end && cfg.boundary == Boundary::Open);
    if (!qualifies) continue;
    const Duration offset = r.start - anchor;
    if (offset >= kDailyRestWindow) report(anchor, offset);
    anchor = r.end();
  }

  const Duration remaining = finish - anchor;
  if (remaining.seconds > 0) {
    if (remaining >= kDailyRestWindow || cfg.boundary == Boundary::Closed) report(anchor, remaining);
  }
  return v;
}

}  // namespace tacho
