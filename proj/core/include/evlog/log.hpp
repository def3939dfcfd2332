#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "evlog/event.hpp"

namespace evlog {

/// One tracked entity: its identifier value, the attributes shared by all of
/// its events, and its time-ordered trace.
struct Case {
  AttributeValue id;
  AttributeMap case_attrs;
  std::vector<Event> trace;

  friend bool operator==(const Case&, const Case&) = default;
};

/// Cases for one case identifier, sorted by ascending id.
class StructuredEventLog {
public:
  StructuredEventLog() = default;

  /// Assembles a log from cases whose traces are already ordered. Case
  /// attributes and global case attributes are recomputed from the traces;
  /// cases are sorted by id. Use check_invariants() to validate the result.
  static StructuredEventLog from_cases(std::string id_attribute, std::vector<Case> cases,
                                       std::vector<std::string> columns = {},
                                       std::size_t uncorrelated = 0,
                                       std::vector<std::string> warnings = {});

  /// Same identifier and metadata, different case set. Cases are taken as-is
  /// (their case attributes are not recomputed).
  StructuredEventLog with_cases(std::vector<Case> cases) const;

  /// Same identifier and metadata, traces replaced. Case attributes are
  /// recomputed from the new traces.
  StructuredEventLog with_traces(std::vector<Case> cases) const;

  const std::string& id_attribute() const noexcept { return id_attribute_; }
  const std::vector<Case>& cases() const noexcept { return cases_; }
  const AttributeNameSet& global_case_attributes() const noexcept { return global_; }
  /// Events of the source table that had no value for the case identifier.
  std::size_t uncorrelated_events() const noexcept { return uncorrelated_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }
  /// Column order of the source table, used for CSV export.
  const std::vector<std::string>& columns() const noexcept { return columns_; }

  std::size_t size() const noexcept { return cases_.size(); }
  bool empty() const noexcept { return cases_.empty(); }
  std::size_t event_count() const noexcept;
  const Case* find(const AttributeValue& id) const;

  friend bool operator==(const StructuredEventLog&, const StructuredEventLog&) = default;

private:
  void finalize();

  std::string id_attribute_;
  std::vector<Case> cases_;
  AttributeNameSet global_;
  std::size_t uncorrelated_ = 0;
  std::vector<std::string> warnings_;
  std::vector<std::string> columns_;
};

/// Attributes with one identical defined value on every event of `trace`.
/// The identifier is always included; an empty trace yields only it.
AttributeMap compute_case_attributes(std::span<const Event> trace, std::string_view id_attribute,
                                     const AttributeValue& id);

/// Every violated log invariant, one message each; empty when valid.
std::vector<std::string> check_invariants(const StructuredEventLog& log);

/// Defined values of `id` over the table. Throws UnknownAttribute.
std::set<AttributeValue> cases(const EventTable& table, std::string_view id);

/// Events whose `id` equals `c`, in table order. Throws UnknownAttribute.
std::vector<Event> correlate(const EventTable& table, std::string_view id,
                             const AttributeValue& c);

/// Orders events by time, equal timestamps by ascending event index.
/// Throws EmptyEventSet.
std::vector<Event> build_trace(std::vector<Event> events);

/// Structured log for case identifier `id`. Throws TimeAsCaseId,
/// UnknownAttribute, or NoActivityAttribute when no attribute other than
/// time and `id` exists.
StructuredEventLog extract_log(const EventTable& table, std::string_view id);

/// A trace as a strict partial order: e < f iff time(e) < time(f).
class PartialOrderTrace {
public:
  /// Throws EmptyEventSet.
  explicit PartialOrderTrace(std::vector<Event> events);

  /// Events in build_trace order.
  const std::vector<Event>& events() const noexcept { return events_; }
  /// Whether events()[i] precedes events()[j].
  bool precedes(std::size_t i, std::size_t j) const;
  /// All ordered pairs (i, j) of positions into events().
  std::vector<std::pair<std::size_t, std::size_t>> relation() const;
  /// True when `sequence` holds exactly these events (by index) and never
  /// places an event after one it precedes.
  bool is_linearization(std::span<const Event> sequence) const;

private:
  std::vector<Event> events_;
};

PartialOrderTrace partial_order_trace(std::vector<Event> events);

}  // namespace evlog
