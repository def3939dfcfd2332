#pragma once

#include <string>

#include "evlog/log.hpp"

namespace evlog {

/// Serializes a log to the documented XES subset (see docs/xes.md): one
/// <trace> per case in ascending id order with the id as concept:name, one
/// <event> per trace event. The case identifier is only repeated on events
/// when `include_case_id_on_events` is set. Output is byte-stable.
std::string export_xes(const StructuredEventLog& log, bool include_case_id_on_events = false);

}  // namespace evlog
