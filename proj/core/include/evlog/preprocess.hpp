#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "evlog/classifier.hpp"
#include "evlog/log.hpp"
#include "evlog/predicate.hpp"

namespace evlog {

enum class ReplacementPolicy { KeepLast, KeepFirst, Merge };
enum class MergeTimestamp { First, Last, Midpoint };

/// How aggregation groups runs (`grouping`) and what replaces a run of two or
/// more events (`policy`). Merge starts from the last event of the run, takes
/// the timestamp per `timestamp` and turns each attribute in `collect` into
/// the set of its values over the run.
struct AggregationSpec {
  Classifier grouping;
  ReplacementPolicy policy = ReplacementPolicy::KeepLast;
  MergeTimestamp timestamp = MergeTimestamp::Last;
  std::vector<std::string> collect;
};

struct SelectStep {
  Predicate predicate;
};
struct ProjectStep {
  Predicate predicate;
};
struct AggregateStep {
  AggregationSpec spec;
};

using FilterStep = std::variant<SelectStep, ProjectStep, AggregateStep>;

struct FilterStack {
  std::vector<FilterStep> steps;
};

std::string_view step_kind(const FilterStep& step);

struct StepStats {
  std::string kind;
  std::size_t cases_in = 0;
  std::size_t cases_out = 0;
  std::size_t events_in = 0;
  std::size_t events_out = 0;

  friend bool operator==(const StepStats&, const StepStats&) = default;
};

struct StackResult {
  StructuredEventLog log;
  std::vector<StepStats> steps;
};

/// Cases satisfying a case-level predicate, unchanged.
/// Throws PredicateArityError for event-level predicates.
StructuredEventLog select(const StructuredEventLog& log, const Predicate& predicate);

/// Every trace filtered to the events satisfying an event-level predicate.
/// Cases are kept even when their trace becomes empty.
/// Throws PredicateArityError for case-level predicates.
StructuredEventLog project(const StructuredEventLog& log, const Predicate& predicate);

/// Replaces each maximal run of consecutive equal-class events by one event.
/// The case identifier is never collected, so merged events stay correlated.
StructuredEventLog aggregate(const StructuredEventLog& log, const AggregationSpec& spec);

/// Replacement function on one run; a single-event run is returned as is.
Event replace_run(std::span<const Event> run, const AggregationSpec& spec);

/// Applies the steps left to right. Log-context statistics are taken from
/// the log entering each step. Errors carry the failing step index.
StackResult apply_stack(const StructuredEventLog& log, const FilterStack& stack);

}  // namespace evlog
