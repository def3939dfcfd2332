#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "evlog/event.hpp"
#include "evlog/timestamp.hpp"

namespace evlog {

class StructuredEventLog;

struct CsvProfile {
  char delimiter = ',';
  /// Patterns for parse_timestamp, tried in order.
  std::vector<std::string> timestamp_formats{"DD/MM/YYYY HH:mm", "DD/MM/YYYY HH:mm:ss",
                                             std::string(kIso8601)};
  /// Source column holding the timestamp; renamed to "time" on import.
  std::string time_column{kTimeAttribute};
  /// Cell texts read as undefined. The empty cell is always undefined.
  std::set<std::string, std::less<>> null_markers{""};
  /// Attribute every row must define. When unset, the first non-time column
  /// defined on every row is used.
  std::optional<std::string> shared_attribute;
};

/// Parses an RFC-4180 style CSV document with a mandatory header row.
///
/// Cells are typed per cell: Int, then Real, then Time (per the profile's
/// formats), else Text. Numbers are only typed as such when their canonical
/// rendering reproduces the cell text, so `007` and `1.50` stay Text and
/// re-export is lossless. Errors carry the 0-based data row.
EventTable parse_csv(std::string_view bytes, const CsvProfile& profile = {});

EventTable read_csv_file(const std::filesystem::path& path, const CsvProfile& profile = {});

/// Writes a table back out. Time-typed cells use their original text when it
/// is known. Columns follow the table's recorded order, then any remaining
/// attribute names in sorted order.
std::string write_csv(const EventTable& table, char delimiter = ',');

/// Flattens a structured log into one row per trace event, cases in log
/// order and events in trace order.
std::string write_csv(const StructuredEventLog& log, char delimiter = ',');

/// Text of a single cell as written by write_csv.
std::string cell_text(const Event& e, std::string_view name);

}  // namespace evlog
