#pragma once

// CSV / JSON ingestion and serialization of event logs.
//
//   driver_id,start,duration,activity,crew
//   D1,0,3600,driving,
//   D1,3600,2700,rest,1
//
// JSON is an array of objects carrying the same five fields. Output is
// byte-stable: fields in header order, no padding, '\n' line endings.

#include <charconv>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "tacho/timeline.hpp"

namespace tacho {

enum class EventFormat { Csv, Json };

inline constexpr std::string_view kCsvHeader = "driver_id,start,duration,activity,crew";

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline std::int64_t parse_int(std::string_view field, std::size_t line, const char* name) {
  field = trim(field);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(line, std::string("bad integer for ") + name + ": '" + std::string(field) + "'");
  }
  return v;
}

inline Activity parse_activity_or_throw(std::string_view token, std::size_t line) {
  auto a = parse_activity(trim(token));
  if (!a) throw ParseError(line, "unknown activity '" + std::string(trim(token)) + "'");
  return *a;
}

inline std::optional<std::int64_t> check_crew(std::optional<std::int64_t> crew, std::size_t line) {
  if (crew && *crew <= 0) throw ParseError(line, "crew must be a positive integer");
  return crew;
}

struct RawLog {
  std::vector<Event> events;
  std::string driver_id;
};

inline void note_driver(RawLog& log, std::string id, std::size_t line) {
  if (log.events.empty()) {
    log.driver_id = std::move(id);
  } else if (id != log.driver_id) {
    throw ParseError(line, "mixed driver ids '" + log.driver_id + "' and '" + id + "'");
  }
}

inline RawLog read_csv(std::string_view text) {
  RawLog log;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kCsvHeader) {
        throw ParseError(line_no, "expected header '" + std::string(kCsvHeader) + "'");
      }
      header_seen = true;
      continue;
    }
    std::vector<std::string_view> fields;
    std::size_t from = 0;
    while (true) {
      std::size_t comma = line.find(',', from);
      if (comma == std::string_view::npos) {
        fields.push_back(line.substr(from));
        break;
      }
      fields.push_back(line.substr(from, comma - from));
      from = comma + 1;
    }
    if (fields.size() != 5) {
      throw ParseError(line_no, "expected 5 fields, got " + std::to_string(fields.size()));
    }
    Event e;
    e.start = Timestamp{parse_int(fields[1], line_no, "start")};
    e.duration = Duration{parse_int(fields[2], line_no, "duration")};
    e.activity = parse_activity_or_throw(fields[3], line_no);
    if (!trim(fields[4]).empty()) e.crew = check_crew(parse_int(fields[4], line_no, "crew"), line_no);
    note_driver(log, std::string(trim(fields[0])), line_no);
    log.events.push_back(e);
  }
  return log;
}

inline RawLog read_json(std::string_view text) {
  RawLog log;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& ex) {
    throw ParseError(1, ex.what());
  }
  if (!doc.is_array()) throw ParseError(1, "expected a JSON array of events");
  std::size_t record = 0;
  for (const auto& obj : doc) {
    ++record;
    try {
      Event e;
      e.start = Timestamp{obj.at("start").get<std::int64_t>()};
      e.duration = Duration{obj.at("duration").get<std::int64_t>()};
      e.activity = parse_activity_or_throw(obj.at("activity").get<std::string>(), record);
      if (auto it = obj.find("crew"); it != obj.end() && !it->is_null()) {
        e.crew = check_crew(it->get<std::int64_t>(), record);
      }
      std::string id = obj.contains("driver_id") ? obj["driver_id"].get<std::string>() : "";
      note_driver(log, std::move(id), record);
      log.events.push_back(e);
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError(record, std::string("record ") + std::to_string(record) + ": " + ex.what());
    }
  }
  return log;
}

}  // namespace detail

// Parses and validates. Errors: ParseError for syntax / unknown activities,
// then ValidationError from validate_event_list.
inline EventList parse_events(std::string_view text, EventFormat format,
                              GapPolicy gaps = GapPolicy::reject()) {
  auto raw = format == EventFormat::Csv ? detail::read_csv(text) : detail::read_json(text);
  return validate_event_list(std::move(raw.events), std::move(raw.driver_id), gaps);
}

inline std::string serialize_events(const EventList& el, EventFormat format) {
  if (format == EventFormat::Csv) {
    std::ostringstream os;
    os << kCsvHeader << '\n';
    for (const auto& e : el) {
      os << el.driver_id() << ',' << e.start.seconds << ',' << e.duration.seconds << ','
         << to_string(e.activity) << ',';
      if (e.crew) os << *e.crew;
      os << '\n';
    }
    return os.str();
  }
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& e : el) {
    nlohmann::ordered_json obj;
    obj["driver_id"] = el.driver_id();
    obj["start"] = e.start.seconds;
    obj["duration"] = e.duration.seconds;
    obj["activity"] = std::string(to_string(e.activity));
    obj["crew"] = e.crew ? nlohmann::ordered_json(*e.crew) : nlohmann::ordered_json(nullptr);
    arr.push_back(std::move(obj));
  }
  return arr.dump() + "\n";
}

}  // namespace tacho
