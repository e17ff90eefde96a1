#pragma once

// Rest blocks, rolling Shift / Day / Week segments and calendar weeks.
//
// A segment of kind K is the stretch of activity between two consecutive
// rest blocks that are long enough to delimit K:
//
//   Shift  >= 45 min
//   Day    >= 9 h
//   Week   >= 24 h
//
// `events` holds the interior only; the delimiting rests are reported in
// leading_rest / trailing_rest and are shared with the neighbouring segment.
// Stretches at the timeline edges that lack a delimiter are still emitted,
// flagged `partial`.

#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "tacho/timeline.hpp"

namespace tacho {

struct RestBlock {
  Timestamp start;
  Duration duration;

  Timestamp end() const { return start + duration; }
  bool operator==(const RestBlock&) const = default;
};

enum class SegmentKind { Shift, Day, Week };

inline constexpr Duration kShiftDelimiter = Duration::minutes(45);
inline constexpr Duration kDayDelimiter = Duration::hours(9);
inline constexpr Duration kWeekDelimiter = Duration::hours(24);

inline constexpr Duration delimiter_for(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::Shift: return kShiftDelimiter;
    case SegmentKind::Day: return kDayDelimiter;
    case SegmentKind::Week: return kWeekDelimiter;
  }
  return kShiftDelimiter;
}

struct Segment {
  SegmentKind kind{SegmentKind::Shift};
  // View into the EventList the segment was cut from; never outlives it.
  std::span<const Event> events;
  std::optional<RestBlock> leading_rest;
  std::optional<RestBlock> trailing_rest;
  bool partial{false};

  Timestamp start() const { return leading_rest ? leading_rest->start : events.front().start; }
  Timestamp end() const { return trailing_rest ? trailing_rest->end() : events.back().end(); }
  Timestamp interior_start() const { return events.front().start; }
  Timestamp interior_end() const { return events.back().end(); }
};

inline std::vector<RestBlock> rest_blocks(const EventList& el) {
  // EventList merges adjacent same-activity events, so every Rest event is
  // already a maximal run.
  std::vector<RestBlock> out;
  for (const auto& e : el) {
    if (e.activity == Activity::Rest) out.push_back({e.start, e.duration});
  }
  return out;
}

// Calls fn(const Segment&) for each segment of the given kind, in order,
// without materializing the sequence.
template <class Fn>
void for_each_segment(const EventList& el, SegmentKind kind, Fn&& fn) {
  const Duration threshold = delimiter_for(kind);
  const std::span<const Event> ev(el.events());
  std::optional<RestBlock> leading;
  std::size_t first = 0;  // first interior index of the open segment
  for (std::size_t i = 0; i < ev.size(); ++i) {
    if (ev[i].activity != Activity::Rest || ev[i].duration < threshold) continue;
    const RestBlock bound{ev[i].start, ev[i].duration};
    if (i > first) fn(Segment{kind, ev.subspan(first, i - first), leading, bound, !leading.has_value()});
    leading = bound;
    first = i + 1;
  }
  if (first < ev.size()) fn(Segment{kind, ev.subspan(first), leading, std::nullopt, true});
}

inline std::vector<Segment> segments_of(const EventList& el, SegmentKind kind) {
  std::vector<Segment> out;
  for_each_segment(el, kind, [&out](const Segment& s) { out.push_back(s); });
  return out;
}

inline std::vector<Segment> shifts_of(const EventList& el) { return segments_of(el, SegmentKind::Shift); }
inline std::vector<Segment> days_of(const EventList& el) { return segments_of(el, SegmentKind::Day); }
inline std::vector<Segment> weeks_of(const EventList& el) { return segments_of(el, SegmentKind::Week); }

inline Duration driving_time(std::span<const Event> events) {
  Duration d;
  for (const auto& e : events) {
    if (e.activity == Activity::Driving) d += e.duration;
  }
  return d;
}

inline Duration total_time(std::span<const Event> events) {
  Duration d;
  for (const auto& e : events) d += e.duration;
  return d;
}

inline Duration driving_time(const Segment& s) { return driving_time(s.events); }
inline Duration driving_time(const EventList& el) { return driving_time(std::span(el.events())); }
// Interior time of the segment; bounding rests are excluded.
inline Duration total_time(const Segment& s) { return total_time(s.events); }
inline Duration total_time(const EventList& el) { return total_time(std::span(el.events())); }

// Calendar weeks run Monday 00:00 to the following Monday 00:00 UTC.
// 1970-01-05 (t = 345600) was the first Monday after the epoch; that week
// has index 0.
inline constexpr std::int64_t kWeekSeconds = 604800;
inline constexpr std::int64_t kFirstMonday = 345600;

struct CalendarWeek {
  std::int64_t index{0};

  Timestamp start() const { return Timestamp{kFirstMonday + index * kWeekSeconds}; }
  Timestamp end() const { return start() + Duration{kWeekSeconds}; }
  bool operator==(const CalendarWeek&) const = default;
};

inline std::int64_t week_index(Timestamp t) {
  const std::int64_t x = t.seconds - kFirstMonday;
  return x >= 0 ? x / kWeekSeconds : -((-x + kWeekSeconds - 1) / kWeekSeconds);
}

class EmptyTimeline : public std::invalid_argument {
 public:
  EmptyTimeline() : std::invalid_argument("timeline is empty") {}
};

inline std::vector<CalendarWeek> calendar_weeks_of(const EventList& el) {
  if (el.empty()) throw EmptyTimeline();
  std::vector<CalendarWeek> out;
  const std::int64_t last = week_index(el.finish() - Duration{1});
  for (std::int64_t w = week_index(el.start()); w <= last; ++w) out.push_back({w});
  return out;
}

}  // namespace tacho
