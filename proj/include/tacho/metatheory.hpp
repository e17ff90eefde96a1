#pragma once

// Executable meta-properties of the rule set: satisfiability witnesses,
// the non-locality family of compensation windows, and an empirical probe of
// how checking time grows with input size.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tacho/report.hpp"
#include "tacho/restrictions.hpp"
#include "tacho/segmentation.hpp"
#include "tacho/timeline.hpp"
#include "tacho/weekly_regime.hpp"

namespace tacho {

enum class SynthesisProfile { Minimal, Busy };

struct SynthesisSpec {
  int weeks{1};
  std::uint64_t seed{0};
  SynthesisProfile profile{SynthesisProfile::Busy};
};

// Calendar week the synthesized timelines start in (2024-01-01, a Monday).
inline constexpr std::int64_t kSynthesisBaseWeek = 2817;

namespace detail {

class TimelineBuilder {
 public:
  explicit TimelineBuilder(Timestamp start) : cursor_(start) {}

  void add(Activity a, Duration d) {
    if (d.seconds <= 0) return;
    raw_.push_back(Event{cursor_, d, a, std::nullopt});
    cursor_ = cursor_ + d;
  }
  void rest_until(Timestamp t) { add(Activity::Rest, t - cursor_); }
  Timestamp cursor() const { return cursor_; }

  // Drive 4.5 h, break, drive 4.5 h.
  void working_day(Duration break_length) {
    add(Activity::Driving, kMaxShiftDriving);
    add(Activity::Rest, break_length);
    add(Activity::Driving, kMaxShiftDriving);
  }

  EventList build(std::string driver_id) && {
    return validate_event_list(std::move(raw_), std::move(driver_id));
  }

 private:
  Timestamp cursor_;
  std::vector<Event> raw_;
};

inline constexpr Duration kWorkingDay = kMaxShiftDriving + kShiftDelimiter + kMaxShiftDriving;

}  // namespace detail

// A timeline that passes check_all under Open boundaries.
//
// Minimal: every calendar week is one rest period; weeks after the first open
// with one minute of other work so that each week keeps its own rest.
// Busy: five working days per week (4.5 h driving, a 45-60 min break, 4.5 h
// driving) separated by 11-13 h daily rests, and a weekly rest of at least
// 45 h to the end of the week. The seed varies breaks, daily rests and a
// start offset of up to 4 h after Monday 00:00.
inline EventList synthesize_legal(const SynthesisSpec& spec) {
  if (spec.weeks < 1) throw std::invalid_argument("weeks must be at least 1");
  std::mt19937_64 rng(spec.seed);
  auto minutes_between = [&rng](std::int64_t lo, std::int64_t hi) {
    return Duration::minutes(std::uniform_int_distribution<std::int64_t>(lo, hi)(rng));
  };

  const CalendarWeek first{kSynthesisBaseWeek};
  detail::TimelineBuilder b(first.start());
  for (int k = 0; k < spec.weeks; ++k) {
    const CalendarWeek week{first.index + k};
    if (spec.profile == SynthesisProfile::Minimal) {
      if (k > 0) b.add(Activity::OtherWork, Duration::minutes(1));
      b.rest_until(week.end());
      continue;
    }
    b.rest_until(week.start() + minutes_between(0, 240));
    for (int day = 0; day < 5; ++day) {
      if (day > 0) b.add(Activity::Rest, minutes_between(11 * 60, 13 * 60));
      b.working_day(minutes_between(45, 60));
    }
    b.rest_until(week.end());
  }
  return std::move(b).build("SYN");
}

// Realizes per-week weekly rest lengths as a full timeline: each calendar
// week is filled with legal working days and ends with a rest of exactly the
// requested length finishing on the following Monday 00:00.
inline EventList realize_week_hours(std::span<const Duration> rests,
                                    std::int64_t first_week = kSynthesisBaseWeek) {
  detail::TimelineBuilder b(CalendarWeek{first_week}.start());
  for (std::size_t k = 0; k < rests.size(); ++k) {
    const CalendarWeek week{first_week + static_cast<std::int64_t>(k)};
    const Duration rest = std::clamp(rests[k], Duration{1}, Duration{kWeekSeconds});
    const Duration work_region = Duration{kWeekSeconds} - rest;
    const Duration cycle = detail::kWorkingDay + kRegularDailyRest;
    const std::int64_t days = (work_region + kRegularDailyRest).seconds / cycle.seconds;
    if (days == 0) {
      b.add(Activity::OtherWork, work_region);
    } else if (days == 1) {
      b.working_day(kShiftDelimiter);
      b.add(Activity::OtherWork, work_region - detail::kWorkingDay);
    } else {
      const Duration spare = work_region - Duration{days * detail::kWorkingDay.seconds};
      const Duration daily{spare.seconds / (days - 1)};
      for (std::int64_t d = 0; d < days; ++d) {
        if (d > 0) b.add(Activity::Rest, d + 1 == days ? spare - Duration{daily.seconds * (days - 2)} : daily);
        b.working_day(kShiftDelimiter);
      }
    }
    b.rest_until(week.end());
  }
  return std::move(b).build("REALIZED");
}

struct SatisfiabilityResult {
  bool satisfiable{false};
  EventList witness;
  std::optional<EventList> nontrivial_witness;
};

// The empty timeline has no segments, rests or weeks, so it satisfies every
// rule. With `nontrivial`, a one-week Busy schedule is also produced and
// checked against the same rules.
inline SatisfiabilityResult check_satisfiable(const std::set<Rule>& rules, bool nontrivial = false) {
  SatisfiabilityResult out;
  CheckConfig cfg;
  cfg.rules = rules;
  out.satisfiable = check_all(out.witness, cfg).overall_legal();
  if (nontrivial) {
    auto busy = synthesize_legal({1, 0, SynthesisProfile::Busy});
    if (check_all(busy, cfg).overall_legal()) out.nontrivial_witness = std::move(busy);
  }
  return out;
}

// [44h, 45h x (n-3), 24h, 45h]: illegal as a whole, legal once either end
// week is dropped.
inline std::vector<WeekHours> nonlocal_witness(int n) {
  if (n < 6) throw std::domain_error("non-locality witness needs n >= 6, got " + std::to_string(n));
  std::vector<WeekHours> out;
  for (int i = 0; i < n; ++i) {
    Duration h = kRegularWeeklyRest;
    if (i == 0) h = Duration::hours(44);
    if (i == n - 2) h = kReducedWeeklyRest;
    out.push_back({i, h});
  }
  return out;
}

struct NonLocalityReport {
  int n{0};
  bool full_illegal{false};
  bool without_first_legal{false};
  bool without_last_legal{false};
  std::vector<WeekHours> witness;

  bool confirmed() const { return full_illegal && without_first_legal && without_last_legal; }
};

inline NonLocalityReport verify_nonlocality(int n) {
  NonLocalityReport r;
  r.n = n;
  r.witness = nonlocal_witness(n);
  const std::span<const WeekHours> all(r.witness);
  r.full_illegal = !check_compensation(all, Boundary::Open).legal();
  r.without_first_legal = check_compensation(all.subspan(1), Boundary::Open).legal();
  r.without_last_legal = check_compensation(all.first(all.size() - 1), Boundary::Open).legal();
  return r;
}

struct ProbeRow {
  std::size_t size{0};
  Rule check{Rule::F1};
  std::int64_t nanoseconds{0};
};

// Busy timeline truncated to exactly `events` events (fewer only if 0).
inline EventList busy_timeline_of_size(std::size_t events, std::uint64_t seed = 0) {
  if (events == 0) return {};
  // Rests at week boundaries merge, so a week adds one event fewer than a
  // standalone week has.
  const auto one_week = synthesize_legal({1, seed, SynthesisProfile::Busy});
  int weeks = static_cast<int>(events / (one_week.size() - 1)) + 2;
  auto el = synthesize_legal({weeks, seed, SynthesisProfile::Busy});
  while (el.size() < events) el = synthesize_legal({weeks *= 2, seed, SynthesisProfile::Busy});
  std::vector<Event> prefix(el.begin(), el.begin() + static_cast<std::ptrdiff_t>(events));
  return validate_event_list(std::move(prefix), el.driver_id());
}

// Times f1, f2 and f3 on Busy timelines of the given sizes. Each time is
// the best of several repetitions of a batch sized to ~1e6 events of work
// (3 to 1e5 calls), divided by the batch length. Run on an otherwise idle
// process.
inline std::vector<ProbeRow> feasibility_probe(std::span<const std::size_t> sizes) {
  using clock = std::chrono::steady_clock;
  std::vector<ProbeRow> rows;
  for (auto size : sizes) {
    const auto el = busy_timeline_of_size(size);
    const std::size_t batch = std::clamp<std::size_t>(1000000 / std::max<std::size_t>(size, 1), 3, 100000);
    for (Rule rule : {Rule::F1, Rule::F2, Rule::F3}) {
      std::int64_t best = -1;
      for (int rep = 0; rep < 7; ++rep) {
        std::size_t sink = 0;
        const auto t0 = clock::now();
        for (std::size_t i = 0; i < batch; ++i) {
          sink += check_rule(rule, el, CheckConfig{}).violations.size();
        }
        const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - t0).count();
        if (sink != 0) throw std::logic_error("synthesized timeline failed " + std::string(to_string(rule)));
        const auto per = std::max<std::int64_t>(1, ns / static_cast<std::int64_t>(batch));
        best = best < 0 ? per : std::min(best, per);
      }
      rows.push_back({size, rule, best});
    }
  }
  return rows;
}

inline std::string probe_csv(std::span<const ProbeRow> rows) {
  std::ostringstream os;
  os << "size,check,nanoseconds\n";
  for (const auto& r : rows) os << r.size << ',' << to_string(r.check) << ',' << r.nanoseconds << '\n';
  return os.str();
}

}  // namespace tacho
