#pragma once

// Weekly rest periods against calendar weeks.
//
// Two combinatorial questions live here:
//
//  * Assignment. A weekly rest (>= 24 h) that falls in several calendar
//    weeks may be counted in any one of them, never in more than one. Every
//    week in scope needs at least one counted rest.
//
//  * Compensation. In any two consecutive weeks at least one weekly rest must
//    be regular (>= 45 h); a reduced one (>= 24 h) leaves a debt of
//    45 h - rest that must be paid back en bloc by a later week no more than
//    three weeks after the debtor. Paying reduces the donor's own counted
//    rest, which may turn the donor into a debtor in turn.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tacho/restrictions.hpp"
#include "tacho/segmentation.hpp"
#include "tacho/timeline.hpp"

namespace tacho {

inline constexpr int kCompensationWeeks = 3;

struct WeeklyRest {
  RestBlock rest;
  // Calendar weeks the rest falls in, ascending and contiguous.
  std::vector<std::int64_t> candidates;
};

// Inclusive, contiguous range of calendar week indices.
struct WeekRange {
  std::int64_t first{0};
  std::int64_t last{-1};

  bool empty() const { return last < first; }
  std::size_t size() const { return empty() ? 0 : static_cast<std::size_t>(last - first + 1); }
  bool contains(std::int64_t w) const { return w >= first && w <= last; }
  bool operator==(const WeekRange&) const = default;
};

struct Assignment {
  // week_of[i] is the calendar week rest i is counted in.
  std::vector<std::int64_t> week_of;
  bool operator==(const Assignment&) const = default;
};

struct AssignmentResult {
  bool feasible{false};
  std::optional<Assignment> assignment;
  std::vector<std::int64_t> blamed_weeks;
};

struct WeekHours {
  std::int64_t week{0};
  Duration rest;
  bool operator==(const WeekHours&) const = default;
};

struct Donation {
  std::int64_t debtor_week{0};
  std::int64_t donor_week{0};
  Duration amount;
  bool operator==(const Donation&) const = default;
};

struct Debt {
  std::int64_t week{0};
  Duration amount;
  bool operator==(const Debt&) const = default;
};

struct CompensationPlan {
  std::vector<Donation> donations;
  std::map<std::int64_t, Duration> effective;
  // Debts whose deadline lies past the window; only under Open boundary.
  std::vector<Debt> waived;
};

struct CompensationResult {
  Verdict verdict;
  std::optional<CompensationPlan> plan;

  bool legal() const { return verdict.legal(); }
};

class MalformedInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline std::vector<WeeklyRest> weekly_rest_candidates(const EventList& el) {
  std::vector<WeeklyRest> out;
  for (const auto& r : rest_blocks(el)) {
    if (r.duration < kReducedWeeklyRest) continue;
    WeeklyRest wr{r, {}};
    const std::int64_t last = week_index(r.end() - Duration{1});
    for (std::int64_t w = week_index(r.start); w <= last; ++w) wr.candidates.push_back(w);
    out.push_back(std::move(wr));
  }
  return out;
}

// Weeks that must carry a weekly rest. Open: only calendar weeks the timeline
// covers completely. Closed: every calendar week it touches.
inline WeekRange weeks_in_scope(const EventList& el, Boundary boundary) {
  if (el.empty()) return {};
  if (boundary == Boundary::Closed) {
    return {week_index(el.start()), week_index(el.finish() - Duration{1})};
  }
  std::int64_t first = week_index(el.start());
  if (CalendarWeek{first}.start() != el.start()) ++first;
  return {first, week_index(el.finish()) - 1};
}

namespace detail {

inline std::vector<std::int64_t> in_range(const WeeklyRest& r, const WeekRange& weeks) {
  std::vector<std::int64_t> out;
  for (auto w : r.candidates) {
    if (weeks.contains(w)) out.push_back(w);
  }
  return out;
}

// Bipartite graph: weeks (left, local index) against rests (right).
class CoverGraph {
 public:
  CoverGraph(std::span<const WeeklyRest> rests, const WeekRange& weeks)
      : weeks_(weeks), adj_(weeks.size()) {
    for (std::size_t r = 0; r < rests.size(); ++r) {
      for (auto w : in_range(rests[r], weeks)) adj_[local(w)].push_back(r);
    }
    rest_count_ = rests.size();
  }

  std::size_t local(std::int64_t w) const { return static_cast<std::size_t>(w - weeks_.first); }
  std::int64_t week(std::size_t i) const { return weeks_.first + static_cast<std::int64_t>(i); }
  std::size_t week_count() const { return adj_.size(); }

  // Maximum matching of the given weeks; returns match_of_rest.
  std::vector<std::optional<std::size_t>> match(const std::vector<std::size_t>& subset) const {
    std::vector<std::optional<std::size_t>> owner(rest_count_);
    for (auto w : subset) {
      std::vector<bool> seen(rest_count_, false);
      augment(w, owner, seen);
    }
    return owner;
  }

  // A set of weeks with fewer adjacent rests than members, or nothing when
  // the subset can be matched completely.
  std::optional<std::vector<std::size_t>> violator(const std::vector<std::size_t>& subset) const {
    auto owner = match(subset);
    std::vector<bool> matched(adj_.size(), false);
    for (const auto& o : owner) {
      if (o) matched[*o] = true;
    }
    auto root = std::find_if(subset.begin(), subset.end(), [&](auto w) { return !matched[w]; });
    if (root == subset.end()) return std::nullopt;

    // Weeks reachable from the unmatched root along alternating paths.
    std::set<std::size_t> in_subset(subset.begin(), subset.end());
    std::set<std::size_t> reached{*root};
    std::vector<std::size_t> frontier{*root};
    std::vector<bool> rest_seen(rest_count_, false);
    while (!frontier.empty()) {
      auto w = frontier.back();
      frontier.pop_back();
      for (auto r : adj_[w]) {
        if (rest_seen[r]) continue;
        rest_seen[r] = true;
        if (owner[r] && in_subset.count(*owner[r]) && reached.insert(*owner[r]).second) {
          frontier.push_back(*owner[r]);
        }
      }
    }
    return std::vector<std::size_t>(reached.begin(), reached.end());
  }

  const std::vector<std::size_t>& rests_of(std::size_t w) const { return adj_[w]; }

 private:
  bool augment(std::size_t w, std::vector<std::optional<std::size_t>>& owner,
               std::vector<bool>& seen) const {
    for (auto r : adj_[w]) {
      if (seen[r]) continue;
      seen[r] = true;
      if (!owner[r] || augment(*owner[r], owner, seen)) {
        owner[r] = w;
        return true;
      }
    }
    return false;
  }

  WeekRange weeks_;
  std::vector<std::vector<std::size_t>> adj_;
  std::size_t rest_count_{0};
};

inline std::vector<std::size_t> minimal_violator(const CoverGraph& g,
                                                 std::vector<std::size_t> set) {
  bool shrunk = true;
  while (shrunk) {
    shrunk = false;
    for (std::size_t k = 0; k < set.size(); ++k) {
      std::vector<std::size_t> without = set;
      without.erase(without.begin() + static_cast<std::ptrdiff_t>(k));
      if (auto smaller = g.violator(without)) {
        set = std::move(*smaller);
        shrunk = true;
        break;
      }
    }
  }
  return set;
}

}  // namespace detail

// Left-to-right counting: a rest is counted in its earliest candidate week
// that is still uncovered, or in its last candidate when all are covered.
// Blames the first week left uncovered.
inline AssignmentResult assign_greedy(std::span<const WeeklyRest> rests, const WeekRange& weeks) {
  std::vector<std::size_t> order(rests.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return rests[a].rest.start < rests[b].rest.start;
  });

  std::vector<bool> covered(weeks.size(), false);
  Assignment a{std::vector<std::int64_t>(rests.size(), 0)};
  for (auto i : order) {
    const auto cands = detail::in_range(rests[i], weeks);
    if (cands.empty()) {
      a.week_of[i] = rests[i].candidates.empty() ? 0 : rests[i].candidates.front();
      continue;
    }
    auto pick = std::find_if(cands.begin(), cands.end(), [&](auto w) {
      return !covered[static_cast<std::size_t>(w - weeks.first)];
    });
    const std::int64_t w = pick != cands.end() ? *pick : cands.back();
    covered[static_cast<std::size_t>(w - weeks.first)] = true;
    a.week_of[i] = w;
  }

  AssignmentResult out;
  out.assignment = std::move(a);
  auto hole = std::find(covered.begin(), covered.end(), false);
  out.feasible = hole == covered.end();
  if (!out.feasible) out.blamed_weeks.push_back(weeks.first + (hole - covered.begin()));
  return out;
}

// Exact: is there any counting that covers every week? Solved as a
// week-saturating bipartite matching (augmenting-path search). When none
// exists, blamed_weeks is an inclusion-minimal set of weeks that together
// have fewer candidate rests than members.
inline AssignmentResult assign_exact(std::span<const WeeklyRest> rests, const WeekRange& weeks) {
  detail::CoverGraph g(rests, weeks);
  std::vector<std::size_t> all(g.week_count());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;

  const auto owner = g.match(all);
  Assignment a{std::vector<std::int64_t>(rests.size(), 0)};
  for (std::size_t r = 0; r < rests.size(); ++r) {
    if (owner[r]) {
      a.week_of[r] = g.week(*owner[r]);
    } else {
      const auto cands = detail::in_range(rests[r], weeks);
      a.week_of[r] = !cands.empty()                ? cands.front()
                     : !rests[r].candidates.empty() ? rests[r].candidates.front()
                                                    : 0;
    }
  }

  AssignmentResult out;
  out.assignment = std::move(a);
  if (auto bad = g.violator(all)) {
    out.feasible = false;
    for (auto w : detail::minimal_violator(g, std::move(*bad))) out.blamed_weeks.push_back(g.week(w));
    std::sort(out.blamed_weeks.begin(), out.blamed_weeks.end());
  } else {
    out.feasible = true;
  }
  return out;
}

// Counted weekly rest per week: the longest rest assigned to it, 0 if none.
inline std::vector<WeekHours> weekly_hours(std::span<const WeeklyRest> rests, const Assignment& a,
                                           const WeekRange& weeks) {
  std::vector<WeekHours> out;
  for (auto w = weeks.first; w <= weeks.last; ++w) out.push_back({w, Duration{}});
  for (std::size_t i = 0; i < rests.size() && i < a.week_of.size(); ++i) {
    if (!weeks.contains(a.week_of[i])) continue;
    auto& slot = out[static_cast<std::size_t>(a.week_of[i] - weeks.first)].rest;
    slot = std::max(slot, rests[i].rest.duration);
  }
  return out;
}

inline std::vector<WeekHours> weekly_hours(const EventList& el, const Assignment& a,
                                           const WeekRange& weeks) {
  const auto rests = weekly_rest_candidates(el);
  return weekly_hours(rests, a, weeks);
}

namespace detail {

// Left-to-right state of the compensation search after some prefix of weeks.
struct CompState {
  bool prev_reduced{false};
  // Unsettled debts as (debtor local index, amount in seconds), ascending.
  std::vector<std::pair<int, std::int64_t>> pending;

  auto operator<=>(const CompState&) const = default;
};

struct CompStep {
  CompState next;
  std::vector<std::pair<int, std::int64_t>> settled;
  Duration effective;
};

// All ways week `i` (local index) with counted rest `hours` can follow
// `state`: it settles any subset of the pending debts, and must settle the
// ones whose deadline is this week.
inline std::vector<CompStep> comp_successors(const CompState& state, int i, Duration hours) {
  std::vector<CompStep> out;
  const auto& pending = state.pending;
  const std::size_t k = pending.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    CompStep step;
    Duration effective = hours;
    bool ok = true;
    for (std::size_t j = 0; j < k && ok; ++j) {
      const bool pays = (mask >> j) & 1U;
      const bool due = pending[j].first + kCompensationWeeks == i;
      if (pays) {
        effective -= Duration{pending[j].second};
        step.settled.push_back(pending[j]);
      } else if (due) {
        ok = false;
      } else {
        step.next.pending.push_back(pending[j]);
      }
    }
    if (!ok || effective < kReducedWeeklyRest) continue;
    const bool reduced = effective < kRegularWeeklyRest;
    if (reduced && state.prev_reduced) continue;
    step.next.prev_reduced = reduced;
    if (reduced) step.next.pending.emplace_back(i, (kRegularWeeklyRest - effective).seconds);
    step.effective = effective;
    out.push_back(std::move(step));
  }
  return out;
}

// Whether the debts left after the last week are acceptable.
inline bool comp_accepts(const CompState& state, Boundary boundary) {
  // Debts still pending at the end all have deadlines past the window.
  return boundary == Boundary::Open || state.pending.empty();
}

class CompensationSearch {
 public:
  CompensationSearch(std::span<const WeekHours> hours, Boundary boundary)
      : hours_(hours), boundary_(boundary), choice_(hours.size()) {}

  bool run() { return dfs(0, CompState{}); }

  CompensationPlan plan() const {
    CompensationPlan p;
    for (std::size_t i = 0; i < hours_.size(); ++i) {
      p.effective[hours_[i].week] = choice_[i].effective;
      for (const auto& [debtor, amount] : choice_[i].settled) {
        p.donations.push_back({hours_[static_cast<std::size_t>(debtor)].week, hours_[i].week,
                               Duration{amount}});
      }
    }
    if (!hours_.empty()) {
      for (const auto& [debtor, amount] : choice_.back().next.pending) {
        p.waived.push_back({hours_[static_cast<std::size_t>(debtor)].week, Duration{amount}});
      }
    }
    return p;
  }

 private:
  bool dfs(std::size_t i, const CompState& state) {
    if (i == hours_.size()) return comp_accepts(state, boundary_);
    if (failed_.count({i, state})) return false;
    for (auto& step : comp_successors(state, static_cast<int>(i), hours_[i].rest)) {
      if (dfs(i + 1, step.next)) {
        choice_[i] = std::move(step);
        return true;
      }
    }
    failed_.insert({i, state});
    return false;
  }

  std::span<const WeekHours> hours_;
  Boundary boundary_;
  std::vector<CompStep> choice_;
  std::set<std::pair<std::size_t, CompState>> failed_;
};

inline Violation week_violation(std::int64_t first_week, std::int64_t last_week, Duration measured,
                                Duration limit, std::string message) {
  return {Rule::WeeklyRegime, CalendarWeek{first_week}.start(), CalendarWeek{last_week}.end(),
          measured, limit, std::move(message)};
}

}  // namespace detail

// Decides whether reduced weekly rests in `hours` can all be compensated.
// Hours must be indexed by consecutive weeks.
//
// Open boundary: a debt whose deadline falls past the last week is assumed to
// be paid outside the window, and the first week is not constrained by the
// unseen week before it. Closed boundary: every debt settles in the window.
inline CompensationResult check_compensation(std::span<const WeekHours> hours, Boundary boundary) {
  for (std::size_t i = 0; i < hours.size(); ++i) {
    if (hours[i].rest.seconds < 0) {
      throw MalformedInput("negative weekly rest for week " + std::to_string(hours[i].week));
    }
    if (i > 0 && hours[i].week != hours[i - 1].week + 1) {
      throw MalformedInput("weeks are not consecutive at week " + std::to_string(hours[i].week));
    }
  }

  CompensationResult out;
  for (const auto& h : hours) {
    if (h.rest < kReducedWeeklyRest) {
      out.verdict.violations.push_back(detail::week_violation(
          h.week, h.week, h.rest, kReducedWeeklyRest,
          "calendar week " + std::to_string(h.week) + " has weekly rest " +
              detail::seconds_text(h.rest) + ", below " +
              detail::seconds_text(kReducedWeeklyRest)));
    }
  }
  if (!out.verdict.legal()) return out;

  detail::CompensationSearch search(hours, boundary);
  if (search.run()) {
    out.plan = search.plan();
    return out;
  }

  auto first_reduced = std::find_if(hours.begin(), hours.end(),
                                     [](const WeekHours& h) { return h.rest < kRegularWeeklyRest; });
  const Duration reduction = first_reduced != hours.end()
                                 ? kRegularWeeklyRest - first_reduced->rest
                                 : Duration{};
  out.verdict.violations.push_back(detail::week_violation(
      hours.front().week, hours.back().week, reduction, Duration{},
      "reduced weekly rests from calendar week " +
          std::to_string(first_reduced != hours.end() ? first_reduced->week : hours.front().week) +
          " cannot all be compensated within three weeks without two consecutive reduced weeks"
          " or a week below 24 h"));
  return out;
}

namespace detail {

// Joint search over assignments and compensation plans, week by week. A
// rest's choice is made at the first in-scope week it may be counted in; the
// longest rest counted so far in each later week is carried in the state.
class RegimeSearch {
 public:
  RegimeSearch(std::span<const WeeklyRest> rests, const WeekRange& weeks, Boundary boundary)
      : weeks_(weeks), boundary_(boundary), starting_(weeks.size()) {
    for (const auto& r : rests) {
      auto c = in_range(r, weeks);
      if (c.empty()) continue;
      const auto lo = static_cast<int>(c.front() - weeks.first);
      const auto hi = static_cast<int>(c.back() - weeks.first);
      starting_[static_cast<std::size_t>(lo)].push_back({hi, r.rest.duration.seconds});
    }
  }

  bool run() {
    return dfs(0, std::vector<std::int64_t>(weeks_.size(), 0), CompState{});
  }

 private:
  struct Choice {
    int last;  // last local week the rest may be counted in
    std::int64_t seconds;
  };

  bool dfs(std::size_t i, std::vector<std::int64_t> best, const CompState& state) {
    if (i == weeks_.size()) return comp_accepts(state, boundary_);
    auto key = std::make_tuple(i, std::vector<std::int64_t>(best.begin() + static_cast<std::ptrdiff_t>(i), best.end()), state);
    if (failed_.count(key)) return false;
    const bool ok = place(i, 0, best, state);
    if (!ok) failed_.insert(std::move(key));
    return ok;
  }

  // Places the rests whose choice opens at week i, then advances.
  bool place(std::size_t i, std::size_t k, std::vector<std::int64_t>& best, const CompState& state) {
    const auto& opening = starting_[i];
    if (k == opening.size()) {
      for (auto& step : comp_successors(state, static_cast<int>(i), Duration{best[i]})) {
        if (dfs(i + 1, best, step.next)) return true;
      }
      return false;
    }
    const auto& c = opening[k];
    for (int w = static_cast<int>(i); w <= c.last; ++w) {
      const auto slot = static_cast<std::size_t>(w);
      const auto saved = best[slot];
      best[slot] = std::max(saved, c.seconds);
      const bool ok = place(i, k + 1, best, state);
      best[slot] = saved;
      if (ok) return true;
    }
    return false;
  }

  WeekRange weeks_;
  Boundary boundary_;
  std::vector<std::vector<Choice>> starting_;
  std::set<std::tuple<std::size_t, std::vector<std::int64_t>, CompState>> failed_;
};

}  // namespace detail

// Legal iff some counting of weekly rests into calendar weeks admits a
// compensation plan. On failure the violations explain the assignment found
// by assign_exact: either the weeks no counting can cover, or why its weekly
// hours cannot be compensated.
inline Verdict check_weekly_regime(const EventList& el, const CheckConfig& cfg = {}) {
  const WeekRange weeks = weeks_in_scope(el, cfg.boundary);
  if (weeks.empty()) return {};
  const auto rests = weekly_rest_candidates(el);

  detail::RegimeSearch search(rests, weeks, cfg.boundary);
  if (search.run()) return {};

  Verdict v;
  const auto exact = assign_exact(rests, weeks);
  if (!exact.feasible) {
    std::string list;
    for (auto w : exact.blamed_weeks) list += (list.empty() ? "" : ", ") + std::to_string(w);
    v.violations.push_back(detail::week_violation(
        exact.blamed_weeks.front(), exact.blamed_weeks.back(),
        Duration{}, kReducedWeeklyRest,
        "calendar weeks {" + list + "} share fewer weekly rests than weeks; whatever the"
        " counting, one of them is left without a weekly rest"));
    return v;
  }
  const auto hours = weekly_hours(rests, *exact.assignment, weeks);
  v = check_compensation(hours, cfg.boundary).verdict;
  if (v.legal()) {
    // Another counting would be needed; report the window as a whole.
    v.violations.push_back(detail::week_violation(
        weeks.first, weeks.last, Duration{}, Duration{},
        "no counting of weekly rests admits a compensation plan"));
  }
  return v;
}

}  // namespace tacho
