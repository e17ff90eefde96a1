#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tacho/segmentation.hpp"
#include "tacho/timeline.hpp"

namespace tacho::testing {

inline std::int64_t monday(std::int64_t week) { return CalendarWeek{week}.start().seconds; }

// Timeline over calendar weeks [first, first + weeks) with other work between
// the given rests (start, duration).
inline EventList with_rests(std::int64_t first, int weeks,
                            const std::vector<std::pair<std::int64_t, std::int64_t>>& rests) {
  std::vector<Event> raw;
  Timestamp t = CalendarWeek{first}.start();
  const Timestamp end = CalendarWeek{first + weeks}.start();
  for (auto [start, dur] : rests) {
    if (Timestamp{start} > t) raw.push_back({t, Timestamp{start} - t, Activity::OtherWork, std::nullopt});
    raw.push_back({Timestamp{start}, Duration{dur}, Activity::Rest, std::nullopt});
    t = Timestamp{start + dur};
  }
  if (end > t) raw.push_back({t, end - t, Activity::OtherWork, std::nullopt});
  return validate_event_list(std::move(raw), "F");
}

// Six weeks A-B ... F-G starting at kShortfallWeek. Weekly rests: 45h in A-B,
// 48h across C, 72h across D, 45h in E-F, 45h in F-G.
inline constexpr std::int64_t kShortfallWeek = 2817;
inline EventList straddling_shortfall() {
  constexpr std::int64_t w = kShortfallWeek, h = 3600;
  return with_rests(w, 6,
                    {{monday(w) + 72 * h, 45 * h},
                     {monday(w + 2) - 24 * h, 48 * h},
                     {monday(w + 3) - 36 * h, 72 * h},
                     {monday(w + 4) + 72 * h, 45 * h},
                     {monday(w + 5) + 72 * h, 45 * h}});
}

}  // namespace tacho::testing
