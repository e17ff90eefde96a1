#include <random>
#include <string>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tacho/event_io.hpp"
#include "tacho/timeline.hpp"
#include "test_util.hpp"

namespace tacho {
namespace {

using namespace tacho::testing;

Event ev(std::int64_t start, std::int64_t dur, Activity a) {
  return {Timestamp{start}, Duration{dur}, a, std::nullopt};
}

TEST(ValidateEventList, EmptyIsValid) {
  const auto el = validate_event_list({});
  EXPECT_TRUE(el.empty());
  EXPECT_EQ(el.span(), Duration{0});
}

TEST(ValidateEventList, ContiguousPairKept) {
  const auto el = validate_event_list({ev(0, 3600, D), ev(3600, 3600, R)});
  ASSERT_EQ(el.size(), 2u);
  EXPECT_EQ(el[1].start, Timestamp{3600});
}

TEST(ValidateEventList, GapReportsIndexAndMissingSeconds) {
  try {
    validate_event_list({ev(0, 3600, D), ev(4000, 3600, R)});
    FAIL() << "expected a gap error";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.kind(), ValidationError::Kind::Gap);
    EXPECT_EQ(e.index(), 1u);
    EXPECT_EQ(e.amount(), 400);
  }
}

TEST(ValidateEventList, OverlapAndZeroDuration) {
  try {
    validate_event_list({ev(0, 3600, D), ev(3000, 100, R)});
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.kind(), ValidationError::Kind::Overlap);
    EXPECT_EQ(e.index(), 1u);
    EXPECT_EQ(e.amount(), 600);
  }
  try {
    validate_event_list({ev(0, 3600, D), ev(3600, 0, R)});
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.kind(), ValidationError::Kind::ZeroDuration);
    EXPECT_EQ(e.index(), 1u);
  }
}

TEST(ValidateEventList, MergesAdjacentSameActivity) {
  const auto el = validate_event_list({ev(0, 3600, D), ev(3600, 1800, D)});
  ASSERT_EQ(el.size(), 1u);
  EXPECT_EQ(el[0].duration, Duration{5400});
}

TEST(ValidateEventList, SortsByStart) {
  const auto el = validate_event_list({ev(3600, 60, R), ev(0, 3600, D)});
  ASSERT_EQ(el.size(), 2u);
  EXPECT_EQ(el[0].activity, D);
}

TEST(ValidateEventList, FillPolicies) {
  const auto rested =
      validate_event_list({ev(0, 3600, D), ev(4000, 3600, D)}, "X", GapPolicy::fill_with_rest());
  ASSERT_EQ(rested.size(), 3u);
  EXPECT_EQ(rested[1].activity, R);
  EXPECT_EQ(rested[1].duration, Duration{400});

  // Filling with the neighbours' activity merges everything.
  const auto driven =
      validate_event_list({ev(0, 3600, D), ev(4000, 3600, D)}, "X", GapPolicy::fill_with(D));
  ASSERT_EQ(driven.size(), 1u);
  EXPECT_EQ(driven[0].duration, Duration{7600});
}

TEST(ValidateEventList, PropertiesOnRandomLists) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const auto el = oracle::random_timeline(rng, 30, {1, 60, 2700, 3600, 32400}, trial * 1000);
    // Durations tile the span.
    std::int64_t sum = 0;
    for (const auto& e : el) sum += e.duration.seconds;
    EXPECT_EQ(Duration{sum}, el.span());
    for (std::size_t i = 1; i < el.size(); ++i) {
      EXPECT_EQ(el[i].start, el[i - 1].end());
      EXPECT_NE(el[i].activity, el[i - 1].activity);
    }
    // Idempotent.
    EXPECT_EQ(validate_event_list(el.events(), el.driver_id()), el);
    // Round trip through both formats. An empty list has no rows to carry the
    // driver id.
    if (el.empty()) continue;
    EXPECT_EQ(parse_events(serialize_events(el, EventFormat::Csv), EventFormat::Csv), el);
    EXPECT_EQ(parse_events(serialize_events(el, EventFormat::Json), EventFormat::Json), el);
  }
}

TEST(ParseEvents, CsvFields) {
  const auto el = parse_events("driver_id,start,duration,activity,crew\nD1,0,3600,driving,\n",
                               EventFormat::Csv);
  ASSERT_EQ(el.size(), 1u);
  EXPECT_EQ(el.driver_id(), "D1");
  EXPECT_EQ(el[0], (Event{Timestamp{0}, Duration{3600}, D, std::nullopt}));
}

TEST(ParseEvents, CrewIsCarried) {
  const auto el = parse_events("driver_id,start,duration,activity,crew\nD1,0,60,rest,2\n",
                               EventFormat::Csv);
  EXPECT_EQ(el[0].crew, 2);
}

TEST(ParseEvents, GapFilledWithRest) {
  const std::string csv =
      "driver_id,start,duration,activity,crew\n"
      "D1,0,3600,driving,\n"
      "D1,4000,3600,driving,\n";
  EXPECT_THROW(parse_events(csv, EventFormat::Csv), ValidationError);
  const auto el = parse_events(csv, EventFormat::Csv, GapPolicy::fill_with_rest());
  ASSERT_EQ(el.size(), 3u);
  EXPECT_EQ(el[1], (Event{Timestamp{3600}, Duration{400}, R, std::nullopt}));
}

TEST(ParseEvents, UnknownActivityNamesLine) {
  try {
    parse_events("driver_id,start,duration,activity,crew\nD1,0,60,driving,\nD1,60,60,sleeping,\n",
                 EventFormat::Csv);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("sleeping"), std::string::npos);
  }
}

TEST(ParseEvents, SyntaxErrors) {
  EXPECT_THROW(parse_events("start,duration\n", EventFormat::Csv), ParseError);
  EXPECT_THROW(parse_events("driver_id,start,duration,activity,crew\nD1,0,x,rest,\n", EventFormat::Csv),
               ParseError);
  EXPECT_THROW(parse_events("driver_id,start,duration,activity,crew\nD1,0,60,rest\n", EventFormat::Csv),
               ParseError);
  EXPECT_THROW(parse_events("driver_id,start,duration,activity,crew\nD1,0,60,rest,0\n", EventFormat::Csv),
               ParseError);
  EXPECT_THROW(parse_events("driver_id,start,duration,activity,crew\nD1,0,60,rest,\nD2,60,60,driving,\n",
                            EventFormat::Csv),
               ParseError);
  EXPECT_THROW(parse_events("{", EventFormat::Json), ParseError);
  EXPECT_THROW(parse_events(R"([{"start":0}])", EventFormat::Json), ParseError);
}

TEST(ParseEvents, EmptyInputs) {
  EXPECT_TRUE(parse_events("", EventFormat::Csv).empty());
  EXPECT_TRUE(parse_events("driver_id,start,duration,activity,crew\n", EventFormat::Csv).empty());
  EXPECT_TRUE(parse_events("[]", EventFormat::Json).empty());
}

TEST(SerializeEvents, ByteStable) {
  const auto el = seq({{D, 3600}, {R, 2700}});
  EXPECT_EQ(serialize_events(el, EventFormat::Csv),
            "driver_id,start,duration,activity,crew\n"
            "T,0,3600,driving,\n"
            "T,3600,2700,rest,\n");
  EXPECT_EQ(serialize_events(el, EventFormat::Json),
            R"([{"driver_id":"T","start":0,"duration":3600,"activity":"driving","crew":null},)"
            R"({"driver_id":"T","start":3600,"duration":2700,"activity":"rest","crew":null}])"
            "\n");
}

}  // namespace
}  // namespace tacho
