#pragma once

// Brute-force reference implementations used only by tests. None of these
// share code paths with the library algorithms they are compared against.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <vector>

#include "tacho/tacho.hpp"

namespace tacho::oracle {

inline constexpr std::int64_t H = 3600;

// Day of week of a Unix timestamp through the standard calendar.
inline std::chrono::weekday weekday_of(std::int64_t t) {
  using namespace std::chrono;
  return weekday{floor<days>(sys_seconds{seconds{t}})};
}

// Calendar week index by walking back to the preceding Monday 00:00 and
// counting whole weeks from 1970-01-05.
inline std::int64_t week_index_by_calendar(std::int64_t t) {
  using namespace std::chrono;
  const sys_days day = floor<days>(sys_seconds{seconds{t}});
  const sys_days monday = day - (weekday{day} - Monday);
  const sys_days first_monday = sys_days{year{1970} / January / 5};
  return (monday - first_monday).count() / 7;
}

// Compensation by exhaustive enumeration: every reduced week picks a donor
// among the three following weeks (or, when its deadline is past the window
// under Open boundary, "outside"). Choices are enumerated without pruning and
// each complete choice vector is checked against every constraint.
class CompensationOracle {
 public:
  CompensationOracle(std::vector<std::int64_t> hours, Boundary boundary)
      : h_(std::move(hours)), boundary_(boundary), choice_(h_.size(), kNone) {}

  bool legal() { return enumerate(0); }

 private:
  static constexpr int kNone = -1;
  static constexpr int kOutside = -2;

  std::vector<std::int64_t> effective() const {
    std::vector<std::int64_t> e = h_;
    // Debts are computed in week order since a week's debt depends on what it
    // donated to earlier weeks.
    for (std::size_t i = 0; i < h_.size(); ++i) {
      const std::int64_t debt = std::max<std::int64_t>(0, 45 * H - e[i]);
      if (debt > 0 && choice_[i] >= 0) e[static_cast<std::size_t>(choice_[i])] -= debt;
    }
    return e;
  }

  bool valid() const {
    const auto e = effective();
    const int n = static_cast<int>(h_.size());
    for (int i = 0; i < n; ++i) {
      if (e[i] < 24 * H) return false;
      const bool reduced = e[i] < 45 * H;
      if (i > 0 && reduced && e[i - 1] < 45 * H) return false;
      const int c = choice_[i];
      if (!reduced) {
        if (c != kNone) return false;
        continue;
      }
      if (c == kNone) return false;
      if (c == kOutside) {
        if (boundary_ != Boundary::Open || i + 3 < n) return false;
      } else if (c <= i || c > i + 3 || c >= n) {
        return false;
      }
    }
    return true;
  }

  bool enumerate(std::size_t i) {
    if (i == h_.size()) return valid();
    // Effective value of week i is settled by earlier choices only.
    const auto e = effective();
    if (e[i] >= 45 * H) {
      choice_[i] = kNone;
      return enumerate(i + 1);
    }
    const int n = static_cast<int>(h_.size());
    for (int c : {static_cast<int>(i) + 1, static_cast<int>(i) + 2, static_cast<int>(i) + 3, kOutside}) {
      if (c != kOutside && c >= n) continue;
      choice_[i] = c;
      if (enumerate(i + 1)) return true;
    }
    choice_[i] = kNone;
    return false;
  }

  std::vector<std::int64_t> h_;
  Boundary boundary_;
  std::vector<int> choice_;
};

inline bool compensation_legal(const std::vector<std::int64_t>& hours, Boundary b) {
  return CompensationOracle(hours, b).legal();
}

inline std::vector<WeekHours> to_week_hours(const std::vector<std::int64_t>& seconds) {
  std::vector<WeekHours> out;
  for (std::size_t i = 0; i < seconds.size(); ++i) out.push_back({static_cast<std::int64_t>(i), Duration{seconds[i]}});
  return out;
}

// Every combination of candidate choices; feasible when one covers all weeks.
inline bool assignment_feasible(const std::vector<WeeklyRest>& rests, const WeekRange& weeks) {
  std::vector<std::size_t> pick(rests.size(), 0);
  while (true) {
    std::set<std::int64_t> covered;
    for (std::size_t i = 0; i < rests.size(); ++i) {
      if (!rests[i].candidates.empty()) covered.insert(rests[i].candidates[pick[i]]);
    }
    bool all = true;
    for (auto w = weeks.first; w <= weeks.last; ++w) all = all && covered.count(w);
    if (all) return true;
    std::size_t k = 0;
    while (k < rests.size()) {
      if (++pick[k] < rests[k].candidates.size()) break;
      pick[k] = 0;
      ++k;
    }
    if (k == rests.size()) return false;
  }
}

// Number of distinct rests with a candidate in `weeks_subset`.
inline std::size_t neighbourhood(const std::vector<WeeklyRest>& rests,
                                 const std::vector<std::int64_t>& weeks_subset) {
  std::size_t n = 0;
  for (const auto& r : rests) {
    bool hit = false;
    for (auto w : r.candidates) hit = hit || std::count(weeks_subset.begin(), weeks_subset.end(), w);
    n += hit;
  }
  return n;
}

// f2 via every maximal window free of 45-minute rests.
inline bool f2_legal(const EventList& el) {
  const auto& ev = el.events();
  auto delim = [&](std::size_t i) {
    return ev[i].activity == Activity::Rest && ev[i].duration.seconds >= 2700;
  };
  for (std::size_t i = 0; i < ev.size(); ++i) {
    for (std::size_t j = i; j < ev.size(); ++j) {
      bool free = true;
      for (std::size_t k = i; k <= j; ++k) free = free && !delim(k);
      if (!free) break;
      const bool left_max = i == 0 || delim(i - 1);
      const bool right_max = j + 1 == ev.size() || delim(j + 1);
      if (!left_max || !right_max) continue;
      std::int64_t driving = 0;
      for (std::size_t k = i; k <= j; ++k) {
        if (ev[k].activity == Activity::Driving) driving += ev[k].duration.seconds;
      }
      if (driving > 16200) return false;
    }
  }
  return true;
}

// Driving per maximal window free of 9-hour rests, with the start of the
// window's first event.
inline std::vector<std::pair<std::int64_t, std::int64_t>> day_driving(const EventList& el) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  std::int64_t driving = 0, start = -1;
  for (const auto& e : el) {
    if (e.activity == Activity::Rest && e.duration.seconds >= 9 * H) {
      if (start >= 0) out.push_back({start, driving});
      driving = 0;
      start = -1;
      continue;
    }
    if (start < 0) start = e.start.seconds;
    if (e.activity == Activity::Driving) driving += e.duration.seconds;
  }
  if (start >= 0) out.push_back({start, driving});
  return out;
}

inline bool daily_driving_legal(const EventList& el) {
  std::map<std::int64_t, int> extended;
  for (auto [start, driving] : day_driving(el)) {
    if (driving > 10 * H) return false;
    if (driving > 9 * H && ++extended[week_index_by_calendar(start)] > 2) return false;
  }
  return true;
}

// Forward chaining with per-rule counters of unmet premises.
inline knowledge::KnowledgeBase closure(const knowledge::KnowledgeBase& kb,
                                        const std::vector<knowledge::InferenceRule>& rules) {
  std::vector<std::size_t> unmet(rules.size());
  std::map<knowledge::Proposition, std::vector<std::size_t>> watchers;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    unmet[i] = rules[i].premises.size();
    for (const auto& p : rules[i].premises) watchers[p].push_back(i);
  }
  knowledge::KnowledgeBase known;
  std::queue<knowledge::Proposition> todo;
  for (const auto& p : kb) todo.push(p);
  while (!todo.empty()) {
    auto p = todo.front();
    todo.pop();
    if (!known.insert(p).second) continue;
    for (auto i : watchers[p]) {
      if (--unmet[i] == 0) todo.push(rules[i].conclusion);
    }
  }
  return known;
}

// Random contiguous timeline from a small activity/duration alphabet.
inline EventList random_timeline(std::mt19937_64& rng, std::size_t max_events,
                                 const std::vector<std::int64_t>& durations, std::int64_t start = 0) {
  std::uniform_int_distribution<std::size_t> count(0, max_events);
  std::uniform_int_distribution<int> act(0, 3);
  std::uniform_int_distribution<std::size_t> dur(0, durations.size() - 1);
  std::vector<Event> raw;
  std::int64_t t = start;
  const std::size_t n = count(rng);
  for (std::size_t i = 0; i < n; ++i) {
    const Duration d{durations[dur(rng)]};
    raw.push_back({Timestamp{t}, d, static_cast<Activity>(act(rng)), std::nullopt});
    t += d.seconds;
  }
  return validate_event_list(std::move(raw), "R");
}

}  // namespace tacho::oracle
