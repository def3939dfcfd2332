#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "evlog/value.hpp"

namespace evlog {

/// Canonical name of the mandatory timestamp attribute.
inline constexpr std::string_view kTimeAttribute = "time";

using AttributeMap = std::map<std::string, AttributeValue, std::less<>>;

/// One observation: a partial map from attribute names to values.
///
/// Undefined values are never stored, so `attrs.contains(a)` is exactly
/// "a is defined on this event". `source_text` keeps the original cell text
/// of time-typed attributes so they can be written back unchanged.
struct Event {
  std::size_t index = 0;
  AttributeMap attrs;
  std::map<std::string, std::string, std::less<>> source_text;

  /// Builds an event, dropping undefined entries.
  static Event make(std::size_t index, AttributeMap attrs);

  /// Value of the time attribute. Throws Error(InvalidEvent) if it is not a
  /// defined timestamp.
  Timestamp time() const;

  friend bool operator==(const Event&, const Event&) = default;
};

/// π(e, a): the value of `name` on `e`, or undefined.
const AttributeValue& get_attr(const Event& e, std::string_view name);

/// Empty when `e` satisfies the event requirements; otherwise one message
/// per violated requirement.
std::vector<std::string> validate_event(const Event& e);

/// A finite sequence of valid events that all define one shared attribute.
/// Event indices always equal their positions.
class EventTable {
public:
  EventTable() = default;

  /// Throws Error(InvalidEvent) for an invalid event and Error(InvalidTable)
  /// when an event lacks `shared_attribute`. Indices are reassigned to
  /// positions. `columns` records the preferred column order for export.
  EventTable(std::vector<Event> events, std::string shared_attribute,
             std::vector<std::string> columns = {});

  const std::vector<Event>& events() const noexcept { return events_; }
  const std::string& shared_attribute() const noexcept { return shared_attribute_; }
  const std::vector<std::string>& columns() const noexcept { return columns_; }
  std::size_t size() const noexcept { return events_.size(); }
  bool empty() const noexcept { return events_.empty(); }
  const Event& operator[](std::size_t i) const { return events_[i]; }

private:
  std::vector<Event> events_;
  std::string shared_attribute_;
  std::vector<std::string> columns_;
};

using AttributeNameSet = std::set<std::string, std::less<>>;

/// Every name that has a defined value on at least one event.
AttributeNameSet attribute_names(const EventTable& table);

}  // namespace evlog
