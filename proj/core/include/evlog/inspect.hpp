#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "evlog/event.hpp"

namespace evlog {

/// Profile of one attribute, used to pick a case identifier.
struct AttributeReport {
  std::string name;
  std::size_t defined = 0;
  std::size_t distinct = 0;
  /// int, real, time, text, set, or mixed.
  std::string inferred_type;
  /// Reasons the attribute probably does not identify entities; empty for
  /// case identifier candidates.
  std::vector<std::string> flags;

  bool candidate() const noexcept { return flags.empty(); }
};

/// Attributes ranked candidates first, then by defined count, distinct
/// count and name.
struct TableReport {
  std::size_t events = 0;
  std::vector<AttributeReport> attributes;
};

TableReport inspect_table(const EventTable& table);

/// One line per attribute:
/// "order: 32 defined, 5 distinct, int, case id candidate".
std::string format_report(const TableReport& report);

}  // namespace evlog
