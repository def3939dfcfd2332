#include <gtest/gtest.h>

#include "evlog/error.hpp"
#include "evlog/log.hpp"
#include "evlog/sort.hpp"
#include "helpers.hpp"

using namespace evlog;
using test::fixture_case;
using test::fixture_log;
using test::fixture_table;

TEST(Extraction, CasesOfOrder) {
  const auto ids = cases(fixture_table(), "order");
  std::vector<std::string> got;
  for (const auto& v : ids) got.push_back(v.to_string());
  EXPECT_EQ(got, (std::vector<std::string>{"23", "35", "41", "56", "72"}));
  EXPECT_EQ(fixture_log().size(), 5u);
  EXPECT_EQ(fixture_log().event_count(), 32u);
  EXPECT_EQ(fixture_log().uncorrelated_events(), 0u);
  EXPECT_TRUE(fixture_log().warnings().empty());
  EXPECT_TRUE(check_invariants(fixture_log()).empty());
}

TEST(Extraction, TraceOf23) {
  const auto& c = fixture_case(23);
  EXPECT_EQ(test::actions(c), (std::vector<std::string>{"receive payment", "archive"}));
  EXPECT_EQ(c.trace[0].index, 0u);
}

TEST(Extraction, TraceLengths) {
  std::vector<std::size_t> lengths;
  for (const auto& c : fixture_log().cases()) lengths.push_back(c.trace.size());
  EXPECT_EQ(lengths, (std::vector<std::size_t>{2, 8, 8, 6, 8}));
}

TEST(Extraction, CaseAttributes) {
  const auto& c23 = fixture_case(23);
  EXPECT_EQ(c23.case_attrs.at("user").to_string(), "System");
  EXPECT_FALSE(c23.case_attrs.contains("customer"));
  EXPECT_EQ(fixture_case(35).case_attrs.at("type").to_string(), "online");
  EXPECT_FALSE(fixture_case(72).case_attrs.contains("type"));
  EXPECT_EQ(fixture_log().global_case_attributes(), AttributeNameSet{"order"});
}

TEST(Extraction, CustomerCorrelation) {
  const auto log = extract_log(fixture_table(), "customer");
  EXPECT_EQ(log.size(), 3u);
  EXPECT_EQ(log.uncorrelated_events(), 27u);
  ASSERT_FALSE(log.warnings().empty());
  EXPECT_EQ(log.warnings().front(), "events uncorrelated: 27");
  EXPECT_EQ(log.find(AttributeValue::text("A7001"))->trace.size(), 3u);
}

TEST(Extraction, LabelLikeIdentifierWarns) {
  const auto log = extract_log(fixture_table(), "action");
  EXPECT_EQ(log.size(), 6u);
  ASSERT_EQ(log.warnings().size(), 1u);
  EXPECT_NE(log.warnings().front().find("look like labels"), std::string::npos);
}

TEST(Extraction, Errors) {
  auto code = [](std::string_view id) {
    try {
      extract_log(fixture_table(), id);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::SchemaError;
  };
  EXPECT_EQ(code("time"), ErrorCode::TimeAsCaseId);
  EXPECT_EQ(code("nope"), ErrorCode::UnknownAttribute);
  EXPECT_THROW(cases(fixture_table(), "nope"), Error);

  EventTable only_id({test::ev(0, {{"c", "1"}})}, "c");
  try {
    extract_log(only_id, "c");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoActivityAttribute);
  }
}

TEST(Extraction, EmptyTable) {
  const auto log = extract_log(parse_csv("time,order,action\n"), "order");
  EXPECT_TRUE(log.empty());
  EXPECT_EQ(log.global_case_attributes(), AttributeNameSet{"order"});
}

TEST(Trace, TiesBrokenBySourceIndex) {
  std::vector<Event> events{test::ev(5, {{"a", "x"}}), test::ev(1, {{"a", "y"}}),
                            test::ev(5, {{"a", "z"}})};
  for (std::size_t i = 0; i < events.size(); ++i) events[i].index = i;
  const auto t = build_trace(events);
  EXPECT_EQ(t[0].index, 1u);
  EXPECT_EQ(t[1].index, 0u);
  EXPECT_EQ(t[2].index, 2u);
  EXPECT_THROW(build_trace({}), Error);
}

TEST(Trace, CorrelateKeepsTableOrder) {
  const auto events = correlate(fixture_table(), "order", AttributeValue::integer(35));
  EXPECT_EQ(events.size(), 8u);
  for (std::size_t i = 1; i < events.size(); ++i) EXPECT_LT(events[i - 1].index, events[i].index);
}

TEST(PartialOrder, TiesAreUnordered) {
  const auto po = partial_order_trace(fixture_case(35).trace);
  const auto n = po.events().size();
  // e9 and e10 share a timestamp; they are the last two events of case 35.
  EXPECT_FALSE(po.precedes(n - 2, n - 1));
  EXPECT_FALSE(po.precedes(n - 1, n - 2));
  EXPECT_TRUE(po.precedes(0, n - 1));
  EXPECT_EQ(po.relation().size(), n * (n - 1) / 2 - 1);

  auto swapped = fixture_case(35).trace;
  std::swap(swapped[n - 2], swapped[n - 1]);
  EXPECT_TRUE(po.is_linearization(swapped));
  std::swap(swapped[0], swapped[1]);
  EXPECT_FALSE(po.is_linearization(swapped));
  EXPECT_FALSE(po.is_linearization(std::span(swapped).first(3)));
}

TEST(Sort, GroupsByFirstAppearanceThenTime) {
  const auto sorted = sort_table(fixture_table(), SortSpec{"order"});
  ASSERT_EQ(sorted.size(), 32u);
  std::vector<std::string> orders;
  for (const auto& e : sorted.events()) {
    const auto o = get_attr(e, "order").to_string();
    if (orders.empty() || orders.back() != o) orders.push_back(o);
  }
  EXPECT_EQ(orders, (std::vector<std::string>{"23", "35", "41", "56", "72"}));
  EXPECT_EQ(*get_attr(sorted[0], kSourceIndexAttribute).as_int(), 0);
  for (std::size_t i = 0; i < sorted.size(); ++i) EXPECT_EQ(sorted[i].index, i);
}

TEST(Sort, Errors) {
  EXPECT_THROW(sort_table(fixture_table(), SortSpec{"nope"}), Error);
  EXPECT_THROW(sort_table(fixture_table(), SortSpec{"order", false}), Error);
}

TEST(Log, InvariantViolationsAreReported) {
  auto cases_copy = fixture_log().cases();
  std::swap(cases_copy[1].trace[0], cases_copy[1].trace[1]);
  cases_copy[2].trace.push_back(cases_copy[0].trace[0]);
  const auto broken = fixture_log().with_cases(cases_copy);
  const auto v = check_invariants(broken);
  EXPECT_GE(v.size(), 2u);
}
