#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "evlog/csv.hpp"
#include "evlog/event.hpp"
#include "evlog/log.hpp"

namespace evlog::test {

inline const std::string kFixture = std::string(EVLOG_SOURCE_DIR) + "/fixtures/order_events.csv";

inline const EventTable& fixture_table() {
  static const EventTable table = read_csv_file(kFixture);
  return table;
}

inline const StructuredEventLog& fixture_log() {
  static const StructuredEventLog log = extract_log(fixture_table(), "order");
  return log;
}

inline const Case& fixture_case(std::int64_t order) {
  return *fixture_log().find(AttributeValue::integer(order));
}

/// Event with a time in minutes and text attributes.
inline Event ev(std::int64_t minute, std::initializer_list<std::pair<std::string, std::string>> attrs) {
  AttributeMap m;
  m.emplace("time", AttributeValue::time({minute * 60000}));
  for (const auto& [k, v] : attrs) m.emplace(k, AttributeValue::text(v));
  return Event::make(0, std::move(m));
}

inline std::vector<std::string> actions(const Case& c, const std::string& attr = "action") {
  std::vector<std::string> out;
  for (const auto& e : c.trace) out.push_back(get_attr(e, attr).to_string());
  return out;
}

}  // namespace evlog::test
