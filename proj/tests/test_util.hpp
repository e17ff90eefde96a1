#pragma once

#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

#include "tacho/timeline.hpp"

namespace tacho::testing {

inline constexpr std::int64_t H = 3600;
inline constexpr std::int64_t M = 60;

inline constexpr Activity D = Activity::Driving;
inline constexpr Activity W = Activity::OtherWork;
inline constexpr Activity A = Activity::Availability;
inline constexpr Activity R = Activity::Rest;

// Contiguous timeline from (activity, seconds) pairs.
inline EventList seq(std::initializer_list<std::pair<Activity, std::int64_t>> parts,
                     std::int64_t start = 0) {
  std::vector<Event> raw;
  std::int64_t t = start;
  for (auto [a, d] : parts) {
    raw.push_back({Timestamp{t}, Duration{d}, a, std::nullopt});
    t += d;
  }
  return validate_event_list(std::move(raw), "T");
}

}  // namespace tacho::testing
