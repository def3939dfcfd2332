#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "evlog/event.hpp"

namespace evlog {

/// Attribute recording an event's index before sort_table moved it.
inline constexpr std::string_view kSourceIndexAttribute = "source:index";

struct SortSpec {
  std::optional<std::string> group_by;
  /// Time ordering inside each group is mandatory; false is rejected.
  bool then_by_time = true;
};

/// Stable reorder for inspection: groups in order of first appearance (events
/// without a group value last), each group by time, ties by original index.
/// The original index is kept in "source:index" unless already present.
EventTable sort_table(const EventTable& table, const SortSpec& spec);

}  // namespace evlog
