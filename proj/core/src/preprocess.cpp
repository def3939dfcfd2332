#include "evlog/preprocess.hpp"

#include "evlog/error.hpp"

namespace evlog {

std::string_view step_kind(const FilterStep& step) {
  switch (step.index()) {
    case 0: return "select";
    case 1: return "project";
    default: return "aggregate";
  }
}

StructuredEventLog select(const StructuredEventLog& log, const Predicate& predicate) {
  if (predicate.level() == PredicateLevel::Event) {
    throw Error(ErrorCode::PredicateArityError, "selection needs a case-level predicate");
  }
  const LogContext ctx(log, predicate);
  std::vector<Case> kept;
  for (const auto& c : log.cases()) {
    if (evaluate_case(predicate, c, ctx)) kept.push_back(c);
  }
  return log.with_cases(std::move(kept));
}

StructuredEventLog project(const StructuredEventLog& log, const Predicate& predicate) {
  if (predicate.level() == PredicateLevel::Case) {
    throw Error(ErrorCode::PredicateArityError, "projection needs an event-level predicate");
  }
  const LogContext ctx(log, predicate);
  std::vector<Case> out;
  out.reserve(log.size());
  for (const auto& c : log.cases()) {
    Case projected{c.id, {}, {}};
    for (std::size_t i = 0; i < c.trace.size(); ++i) {
      if (evaluate_event(predicate, c, i, ctx)) projected.trace.push_back(c.trace[i]);
    }
    out.push_back(std::move(projected));
  }
  return log.with_traces(std::move(out));
}

Event replace_run(std::span<const Event> run, const AggregationSpec& spec) {
  if (run.empty()) throw Error(ErrorCode::EmptyEventSet, "cannot replace an empty run");
  if (run.size() == 1) return run.front();
  switch (spec.policy) {
    case ReplacementPolicy::KeepFirst: return run.front();
    case ReplacementPolicy::KeepLast: return run.back();
    case ReplacementPolicy::Merge: break;
  }

  Event merged = run.back();
  const std::string time_key(kTimeAttribute);
  switch (spec.timestamp) {
    case MergeTimestamp::Last: break;
    case MergeTimestamp::First:
      merged.attrs.insert_or_assign(time_key, get_attr(run.front(), kTimeAttribute));
      if (auto it = run.front().source_text.find(kTimeAttribute);
          it != run.front().source_text.end()) {
        merged.source_text.insert_or_assign(time_key, it->second);
      } else {
        merged.source_text.erase(time_key);
      }
      break;
    case MergeTimestamp::Midpoint: {
      const auto lo = run.front().time().millis;
      const auto hi = run.back().time().millis;
      merged.attrs.insert_or_assign(time_key, AttributeValue::time({lo + (hi - lo) / 2}));
      merged.source_text.erase(time_key);
      break;
    }
  }
  for (const auto& name : spec.collect) {
    if (name == kTimeAttribute) continue;
    std::vector<AttributeValue> values;
    for (const auto& e : run) values.push_back(get_attr(e, name));
    auto set = AttributeValue::set(std::move(values));
    merged.source_text.erase(name);
    if (set.as_set()->empty()) {
      merged.attrs.erase(name);
    } else {
      merged.attrs.insert_or_assign(name, std::move(set));
    }
  }
  return merged;
}

StructuredEventLog aggregate(const StructuredEventLog& log, const AggregationSpec& requested) {
  // Collecting the case identifier would turn it into a set and detach the
  // merged event from its case; within a run it is constant anyway.
  AggregationSpec spec = requested;
  std::erase(spec.collect, log.id_attribute());
  std::vector<Case> out;
  out.reserve(log.size());
  for (const auto& c : log.cases()) {
    Case next{c.id, {}, {}};
    const auto& t = c.trace;
    std::size_t start = 0;
    while (start < t.size()) {
      const auto group = classify(spec.grouping, t[start]);
      std::size_t end = start + 1;
      while (end < t.size() && classify(spec.grouping, t[end]) == group) ++end;
      next.trace.push_back(replace_run(std::span(t).subspan(start, end - start), spec));
      start = end;
    }
    out.push_back(std::move(next));
  }
  return log.with_traces(std::move(out));
}

StackResult apply_stack(const StructuredEventLog& log, const FilterStack& stack) {
  StackResult result{log, {}};
  for (std::size_t i = 0; i < stack.steps.size(); ++i) {
    const auto& step = stack.steps[i];
    StepStats stats;
    stats.kind = std::string(step_kind(step));
    stats.cases_in = result.log.size();
    stats.events_in = result.log.event_count();
    try {
      if (const auto* s = std::get_if<SelectStep>(&step)) {
        result.log = select(result.log, s->predicate);
      } else if (const auto* p = std::get_if<ProjectStep>(&step)) {
        result.log = project(result.log, p->predicate);
      } else {
        result.log = aggregate(result.log, std::get<AggregateStep>(step).spec);
      }
    } catch (const Error& e) {
      throw e.with_step(i);
    }
    stats.cases_out = result.log.size();
    stats.events_out = result.log.event_count();
    result.steps.push_back(std::move(stats));
  }
  return result;
}

}  // namespace evlog
