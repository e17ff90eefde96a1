#pragma once

// Event data model for tachograph activity timelines.
//
// Time is counted in whole seconds since 1970-01-01 00:00:00 UTC. There are
// no time zones and no leap seconds anywhere in the library.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tacho {

struct Duration {
  std::int64_t seconds{0};

  static constexpr Duration hours(std::int64_t h) { return {h * 3600}; }
  static constexpr Duration minutes(std::int64_t m) { return {m * 60}; }

  constexpr auto operator<=>(const Duration&) const = default;

  constexpr Duration& operator+=(Duration d) {
    seconds += d.seconds;
    return *this;
  }
  constexpr Duration& operator-=(Duration d) {
    seconds -= d.seconds;
    return *this;
  }
  friend constexpr Duration operator+(Duration a, Duration b) { return {a.seconds + b.seconds}; }
  friend constexpr Duration operator-(Duration a, Duration b) { return {a.seconds - b.seconds}; }
};

struct Timestamp {
  std::int64_t seconds{0};

  constexpr auto operator<=>(const Timestamp&) const = default;

  friend constexpr Timestamp operator+(Timestamp t, Duration d) { return {t.seconds + d.seconds}; }
  friend constexpr Timestamp operator-(Timestamp t, Duration d) { return {t.seconds - d.seconds}; }
  friend constexpr Duration operator-(Timestamp a, Timestamp b) { return {a.seconds - b.seconds}; }
};

enum class Activity { Driving, OtherWork, Availability, Rest };

inline constexpr std::string_view to_string(Activity a) {
  switch (a) {
    case Activity::Driving: return "driving";
    case Activity::OtherWork: return "other_work";
    case Activity::Availability: return "availability";
    case Activity::Rest: return "rest";
  }
  return "?";
}

inline std::optional<Activity> parse_activity(std::string_view token) {
  if (token == "driving") return Activity::Driving;
  if (token == "other_work") return Activity::OtherWork;
  if (token == "availability") return Activity::Availability;
  if (token == "rest") return Activity::Rest;
  return std::nullopt;
}

struct Event {
  Timestamp start;
  Duration duration;
  Activity activity{Activity::Rest};
  // Crew size as recorded. Carried through, never consulted by checks.
  std::optional<std::int64_t> crew;

  constexpr Timestamp end() const { return start + duration; }

  bool operator==(const Event&) const = default;
};

// How validation treats a hole between two consecutive records.
struct GapPolicy {
  enum class Kind { Reject, FillWithRest, FillWith };

  Kind kind{Kind::Reject};
  Activity fill{Activity::Rest};

  static GapPolicy reject() { return {}; }
  static GapPolicy fill_with_rest() { return {Kind::FillWithRest, Activity::Rest}; }
  static GapPolicy fill_with(Activity a) { return {Kind::FillWith, a}; }

  bool operator==(const GapPolicy&) const = default;
};

class ValidationError : public std::runtime_error {
 public:
  enum class Kind { Overlap, Gap, ZeroDuration, NegativeStart };

  ValidationError(Kind kind, std::size_t index, std::int64_t amount, std::string what)
      : std::runtime_error(std::move(what)), kind_(kind), index_(index), amount_(amount) {}

  Kind kind() const { return kind_; }
  // Index (after sorting by start) of the second event of the offending pair,
  // or of the offending event itself for ZeroDuration / NegativeStart.
  std::size_t index() const { return index_; }
  // Missing seconds for Gap, overlapping seconds for Overlap, 0 otherwise.
  std::int64_t amount() const { return amount_; }

 private:
  Kind kind_;
  std::size_t index_;
  std::int64_t amount_;
};

class EventList;

EventList validate_event_list(std::vector<Event> raw, std::string driver_id = {},
                              GapPolicy gaps = GapPolicy::reject());

// A contiguous, merged sequence of events. Instances only come out of
// validate_event_list, so every EventList satisfies:
//   start(i+1) == end(i), and adjacent events never share an activity.
class EventList {
 public:
  EventList() = default;

  const std::vector<Event>& events() const { return events_; }
  const std::string& driver_id() const { return driver_id_; }
  bool empty() const { return events_.empty(); }
  std::size_t size() const { return events_.size(); }
  const Event& operator[](std::size_t i) const { return events_[i]; }
  auto begin() const { return events_.begin(); }
  auto end() const { return events_.end(); }

  Timestamp start() const { return empty() ? Timestamp{} : events_.front().start; }
  Timestamp finish() const { return empty() ? Timestamp{} : events_.back().end(); }
  Duration span() const { return finish() - start(); }

  bool operator==(const EventList&) const = default;

 private:
  friend EventList validate_event_list(std::vector<Event>, std::string, GapPolicy);

  std::vector<Event> events_;
  std::string driver_id_;
};

inline EventList validate_event_list(std::vector<Event> raw, std::string driver_id,
                                     GapPolicy gaps) {
  std::stable_sort(raw.begin(), raw.end(),
                   [](const Event& a, const Event& b) { return a.start < b.start; });

  EventList out;
  out.driver_id_ = std::move(driver_id);
  auto& merged = out.events_;
  merged.reserve(raw.size());

  auto push = [&merged](const Event& e) {
    if (!merged.empty() && merged.back().activity == e.activity) {
      merged.back().duration += e.duration;
    } else {
      merged.push_back(e);
    }
  };

  for (std::size_t i = 0; i < raw.size(); ++i) {
    const Event& e = raw[i];
    if (e.start.seconds < 0) {
      throw ValidationError(ValidationError::Kind::NegativeStart, i, 0,
                            "event " + std::to_string(i) + " starts before the epoch");
    }
    if (e.duration.seconds <= 0) {
      throw ValidationError(ValidationError::Kind::ZeroDuration, i, 0,
                            "event " + std::to_string(i) + " has non-positive duration");
    }
    if (i > 0) {
      const Timestamp prev_end = raw[i - 1].end();
      if (e.start < prev_end) {
        throw ValidationError(ValidationError::Kind::Overlap, i, (prev_end - e.start).seconds,
                              "event " + std::to_string(i) + " at " +
                                  std::to_string(e.start.seconds) + " overlaps event " +
                                  std::to_string(i - 1) + " ending at " +
                                  std::to_string(prev_end.seconds));
      }
      if (e.start > prev_end) {
        const Duration missing = e.start - prev_end;
        if (gaps.kind == GapPolicy::Kind::Reject) {
          throw ValidationError(ValidationError::Kind::Gap, i, missing.seconds,
                                "gap of " + std::to_string(missing.seconds) +
                                    " s before event " + std::to_string(i) + " (from " +
                                    std::to_string(prev_end.seconds) + " to " +
                                    std::to_string(e.start.seconds) + ")");
        }
        push(Event{prev_end, missing, gaps.fill, std::nullopt});
      }
    }
    push(e);
  }
  return out;
}

}  // namespace tacho
