#pragma once

// Command-line front end. Exit codes: 0 legal / success, 1 illegal (the
// report is still written), 2 input or usage error.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tacho/event_io.hpp"
#include "tacho/knowledge.hpp"
#include "tacho/metatheory.hpp"
#include "tacho/report.hpp"
#include "tacho/weekly_regime.hpp"

namespace tacho::cli {

inline constexpr int kExitLegal = 0;
inline constexpr int kExitIllegal = 1;
inline constexpr int kExitInputError = 2;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline EventFormat format_for(const std::string& path, const std::string& flag) {
  if (flag == "json") return EventFormat::Json;
  if (flag == "csv") return EventFormat::Csv;
  const bool json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  return json ? EventFormat::Json : EventFormat::Csv;
}

inline GapPolicy gap_policy(const std::string& s) {
  if (s == "reject") return GapPolicy::reject();
  if (s == "rest") return GapPolicy::fill_with_rest();
  if (auto a = parse_activity(s)) return GapPolicy::fill_with(*a);
  throw InputError("unknown gap policy '" + s + "'");
}

inline Boundary boundary_of(const std::string& s) {
  return s == "closed" ? Boundary::Closed : Boundary::Open;
}

inline std::set<Rule> rules_of(const std::vector<std::string>& names) {
  if (names.empty()) return {kAllRules.begin(), kAllRules.end()};
  std::set<Rule> out;
  for (const auto& n : names) {
    auto r = parse_rule(n);
    if (!r) throw InputError("unknown rule '" + n + "'");
    out.insert(*r);
  }
  return out;
}

inline std::vector<WeekHours> hours_of(const std::string& arg) {
  std::string text = arg;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || text[first] != '[') text = read_input(arg);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("hours: ") + e.what());
  }
  if (!doc.is_array()) throw InputError("hours: expected a JSON array of seconds");
  std::vector<WeekHours> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    if (!doc[i].is_number_integer()) throw InputError("hours: entry " + std::to_string(i) + " is not an integer");
    out.push_back({static_cast<std::int64_t>(i), Duration{doc[i].get<std::int64_t>()}});
  }
  return out;
}

inline nlohmann::json plan_json(const CompensationPlan& p) {
  nlohmann::json donations = nlohmann::json::array();
  for (const auto& d : p.donations) {
    donations.push_back({{"debtor_week", d.debtor_week}, {"donor_week", d.donor_week}, {"seconds", d.amount.seconds}});
  }
  nlohmann::json effective = nlohmann::json::object();
  for (const auto& [w, d] : p.effective) effective[std::to_string(w)] = d.seconds;
  nlohmann::json waived = nlohmann::json::array();
  for (const auto& d : p.waived) waived.push_back({{"debtor_week", d.week}, {"seconds", d.amount.seconds}});
  return {{"donations", donations}, {"effective", effective}, {"waived", waived}};
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Driving-time and rest-period compliance checker", "tacho"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string file, gaps = "reject", input_format = "auto", boundary = "open", format = "json";
  std::vector<std::string> rules;

  auto add_event_input = [&](CLI::App* sub) {
    sub->add_option("file", file, "event log (CSV or JSON, '-' for stdin)")->required();
    sub->add_option("--gaps", gaps, "gap policy: reject, rest, or an activity to fill with");
    sub->add_option("--input-format", input_format, "csv, json or auto")
        ->check(CLI::IsMember({"auto", "csv", "json"}));
  };
  auto add_boundary = [&](CLI::App* sub) {
    sub->add_option("--boundary", boundary, "open or closed")->check(CLI::IsMember({"open", "closed"}));
  };

  auto* validate = app.add_subcommand("validate", "parse and validate an event log");
  add_event_input(validate);

  auto* check = app.add_subcommand("check", "check an event log against the rules");
  add_event_input(check);
  add_boundary(check);
  check->add_option("--rules", rules, "comma-separated rule ids")->delimiter(',');
  check->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

  bool exact = false, greedy = false;
  auto* assign = app.add_subcommand("assign", "count weekly rests into calendar weeks");
  add_event_input(assign);
  add_boundary(assign);
  auto* exact_flag = assign->add_flag("--exact", exact, "exhaustive search (default)");
  assign->add_flag("--greedy", greedy, "left-to-right counting")->excludes(exact_flag);

  std::string hours_arg;
  auto* compensate = app.add_subcommand("compensate", "compensation check over weekly rest seconds");
  compensate->add_option("hours", hours_arg, "JSON array of seconds, or a file holding one")->required();
  add_boundary(compensate);

  int n = 0;
  auto* locality = app.add_subcommand("analyze-locality", "verify the non-locality witness of size N");
  locality->add_option("--n", n, "number of weeks (>= 6)")->required();

  int weeks = 1;
  std::uint64_t seed = 0;
  std::string profile = "busy", output_format = "csv";
  auto* synth = app.add_subcommand("synthesize", "emit a legal timeline");
  synth->add_option("--weeks", weeks, "number of calendar weeks")->required()->check(CLI::PositiveNumber);
  synth->add_option("--profile", profile, "busy or minimal")->check(CLI::IsMember({"busy", "minimal"}));
  synth->add_option("--seed", seed, "random seed");
  synth->add_option("--output-format", output_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  std::vector<std::size_t> sizes;
  auto* bench = app.add_subcommand("bench", "time f1/f2/f3 against input size");
  bench->add_option("--sizes", sizes, "comma-separated event counts")->required()->delimiter(',');

  std::string kb_file, query;
  auto* ask = app.add_subcommand("query", "answer a query against a knowledge document");
  ask->add_option("knowledge", kb_file, "JSON knowledge document")->required();
  ask->add_option("proposition", query, "atom, '!' prefix for negation")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitLegal : kExitInputError;
  }

  try {
    auto load = [&] {
      return parse_events(detail::read_input(file), detail::format_for(file, input_format),
                          detail::gap_policy(gaps));
    };

    if (*validate) {
      const auto el = load();
      nlohmann::json j = {{"valid", true},
                          {"driver_id", el.driver_id()},
                          {"events", el.size()},
                          {"start", el.start().seconds},
                          {"end", el.finish().seconds}};
      out << j.dump(2) << "\n";
      return kExitLegal;
    }

    if (*check) {
      const auto el = load();
      CheckConfig cfg{detail::boundary_of(boundary), detail::rules_of(rules)};
      const auto report = check_all(el, cfg);
      out << emit_report(report, format == "text" ? ReportFormat::Text : ReportFormat::Json);
      return report.overall_legal() ? kExitLegal : kExitIllegal;
    }

    if (*assign) {
      const auto el = load();
      const auto range = weeks_in_scope(el, detail::boundary_of(boundary));
      const auto rests = weekly_rest_candidates(el);
      const auto result = greedy ? assign_greedy(rests, range) : assign_exact(rests, range);
      nlohmann::json assigned = nlohmann::json::array();
      for (std::size_t i = 0; i < rests.size(); ++i) {
        assigned.push_back({{"rest_start", rests[i].rest.start.seconds},
                            {"rest_duration", rests[i].rest.duration.seconds},
                            {"candidates", rests[i].candidates},
                            {"week", result.assignment->week_of[i]}});
      }
      nlohmann::json j = {{"method", greedy ? "greedy" : "exact"},
                          {"feasible", result.feasible},
                          {"weeks", {{"first", range.first}, {"last", range.last}}},
                          {"assignment", assigned},
                          {"blamed_weeks", result.blamed_weeks}};
      out << j.dump(2) << "\n";
      return result.feasible ? kExitLegal : kExitIllegal;
    }

    if (*compensate) {
      const auto hours = detail::hours_of(hours_arg);
      const auto result = check_compensation(hours, detail::boundary_of(boundary));
      nlohmann::json j = verdict_json(result.verdict);
      j["boundary"] = std::string(to_string(detail::boundary_of(boundary)));
      j["plan"] = result.plan ? detail::plan_json(*result.plan) : nlohmann::json(nullptr);
      out << j.dump(2) << "\n";
      return result.legal() ? kExitLegal : kExitIllegal;
    }

    if (*locality) {
      const auto r = verify_nonlocality(n);
      nlohmann::json witness = nlohmann::json::array();
      for (const auto& h : r.witness) witness.push_back(h.rest.seconds);
      nlohmann::json j = {{"n", r.n},
                          {"full_illegal", r.full_illegal},
                          {"without_first_legal", r.without_first_legal},
                          {"without_last_legal", r.without_last_legal},
                          {"confirmed", r.confirmed()},
                          {"witness", witness}};
      out << j.dump(2) << "\n";
      return r.confirmed() ? kExitLegal : kExitIllegal;
    }

    if (*synth) {
      const auto el = synthesize_legal(
          {weeks, seed, profile == "minimal" ? SynthesisProfile::Minimal : SynthesisProfile::Busy});
      out << serialize_events(el, output_format == "json" ? EventFormat::Json : EventFormat::Csv);
      return kExitLegal;
    }

    if (*bench) {
      std::sort(sizes.begin(), sizes.end());
      out << probe_csv(feasibility_probe(sizes));
      return kExitLegal;
    }

    if (*ask) {
      const auto doc = knowledge::load_knowledge(detail::read_input(kb_file));
      out << to_string(knowledge::answer_query(doc.facts, doc.rules,
                                               knowledge::parse_proposition(query)))
          << "\n";
      return kExitLegal;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ValidationError& e) {
    err << "invalid event log: " << e.what() << "\n";
    return kExitInputError;
  } catch (const knowledge::Inconsistent& e) {
    err << e.what() << "\n";
    return kExitIllegal;
  } catch (const nlohmann::json::exception& e) {
    err << "bad JSON: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace tacho::cli
