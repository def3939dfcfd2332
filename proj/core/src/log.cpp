#include "evlog/log.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <unordered_map>

#include "evlog/error.hpp"

namespace evlog {

namespace {

bool looks_like_label(const AttributeValue& v) {
  const auto* text = v.as_text();
  return text != nullptr && text->find(' ') != std::string::npos;
}

void require_known(const EventTable& table, std::string_view id) {
  const auto names = attribute_names(table);
  if (!names.contains(id)) {
    throw Error(ErrorCode::UnknownAttribute,
                "attribute '" + std::string(id) + "' is not defined on any event");
  }
}

}  // namespace

AttributeMap compute_case_attributes(std::span<const Event> trace, std::string_view id_attribute,
                                     const AttributeValue& id) {
  AttributeMap result;
  if (!trace.empty()) {
    for (const auto& [name, value] : trace.front().attrs) {
      bool shared = true;
      for (const auto& e : trace.subspan(1)) {
        if (get_attr(e, name) != value) {
          shared = false;
          break;
        }
      }
      if (shared) result.emplace(name, value);
    }
  }
  result.insert_or_assign(std::string(id_attribute), id);
  return result;
}

StructuredEventLog StructuredEventLog::from_cases(std::string id_attribute,
                                                  std::vector<Case> cases,
                                                  std::vector<std::string> columns,
                                                  std::size_t uncorrelated,
                                                  std::vector<std::string> warnings) {
  StructuredEventLog log;
  log.id_attribute_ = std::move(id_attribute);
  log.columns_ = std::move(columns);
  log.uncorrelated_ = uncorrelated;
  log.warnings_ = std::move(warnings);
  for (auto& c : cases) c.case_attrs = compute_case_attributes(c.trace, log.id_attribute_, c.id);
  log.cases_ = std::move(cases);
  log.finalize();
  return log;
}

StructuredEventLog StructuredEventLog::with_cases(std::vector<Case> cases) const {
  StructuredEventLog log;
  log.id_attribute_ = id_attribute_;
  log.columns_ = columns_;
  log.uncorrelated_ = uncorrelated_;
  log.warnings_ = warnings_;
  log.cases_ = std::move(cases);
  log.finalize();
  return log;
}

StructuredEventLog StructuredEventLog::with_traces(std::vector<Case> cases) const {
  for (auto& c : cases) c.case_attrs = compute_case_attributes(c.trace, id_attribute_, c.id);
  return with_cases(std::move(cases));
}

void StructuredEventLog::finalize() {
  std::sort(cases_.begin(), cases_.end(),
            [](const Case& a, const Case& b) { return a.id < b.id; });
  global_.clear();
  if (cases_.empty()) {
    global_.insert(id_attribute_);
    return;
  }
  for (const auto& [name, value] : cases_.front().case_attrs) global_.insert(name);
  for (const auto& c : cases_) {
    for (auto it = global_.begin(); it != global_.end();) {
      if (c.case_attrs.contains(*it)) {
        ++it;
      } else {
        it = global_.erase(it);
      }
    }
  }
}

std::size_t StructuredEventLog::event_count() const noexcept {
  std::size_t n = 0;
  for (const auto& c : cases_) n += c.trace.size();
  return n;
}

const Case* StructuredEventLog::find(const AttributeValue& id) const {
  auto it = std::lower_bound(cases_.begin(), cases_.end(), id,
                             [](const Case& c, const AttributeValue& v) { return c.id < v; });
  return it != cases_.end() && it->id == id ? &*it : nullptr;
}

std::vector<std::string> check_invariants(const StructuredEventLog& log) {
  std::vector<std::string> out;
  const auto& id_attr = log.id_attribute();
  std::map<std::size_t, const Case*> owner;
  for (std::size_t i = 0; i < log.cases().size(); ++i) {
    const Case& c = log.cases()[i];
    const auto label = "case " + c.id.to_string();
    if (c.id.is_undefined()) out.push_back("a case has an undefined identifier");
    if (i > 0 && !(log.cases()[i - 1].id < c.id)) {
      out.push_back(label + ": case ids not strictly ascending");
    }
    for (std::size_t k = 0; k < c.trace.size(); ++k) {
      const Event& e = c.trace[k];
      if (auto v = validate_event(e); !v.empty()) out.push_back(label + ": " + v.front());
      if (get_attr(e, id_attr) != c.id) {
        out.push_back(label + ": event " + std::to_string(e.index) + " is not correlated");
      }
      if (k > 0 && e.attrs.contains(kTimeAttribute) &&
          c.trace[k - 1].attrs.contains(kTimeAttribute) && e.time() < c.trace[k - 1].time()) {
        out.push_back(label + ": trace not ordered by time");
      }
      if (auto [it, fresh] = owner.emplace(e.index, &c); !fresh && it->second != &c) {
        out.push_back("event " + std::to_string(e.index) + " is shared by two cases");
      }
    }
    if (c.case_attrs != compute_case_attributes(c.trace, id_attr, c.id)) {
      out.push_back(label + ": case attributes do not match its trace");
    }
  }
  if (!log.global_case_attributes().contains(id_attr)) {
    out.push_back("case identifier is not a global case attribute");
  }
  for (const auto& name : log.global_case_attributes()) {
    for (const auto& c : log.cases()) {
      if (!c.case_attrs.contains(name)) {
        out.push_back("global case attribute '" + name + "' missing on case " +
                      c.id.to_string());
      }
    }
  }
  if (!log.cases().empty()) {
    for (const auto& [name, v] : log.cases().front().case_attrs) {
      const bool everywhere = std::all_of(log.cases().begin(), log.cases().end(),
                                          [&](const Case& c) { return c.case_attrs.contains(name); });
      if (everywhere && !log.global_case_attributes().contains(name)) {
        out.push_back("'" + name + "' is a case attribute of every case but not global");
      }
    }
  }
  return out;
}

std::set<AttributeValue> cases(const EventTable& table, std::string_view id) {
  require_known(table, id);
  std::set<AttributeValue> out;
  for (const auto& e : table.events()) {
    if (const auto& v = get_attr(e, id); v.is_defined()) out.insert(v);
  }
  return out;
}

std::vector<Event> correlate(const EventTable& table, std::string_view id,
                             const AttributeValue& c) {
  require_known(table, id);
  std::vector<Event> out;
  if (c.is_undefined()) return out;
  for (const auto& e : table.events()) {
    if (get_attr(e, id) == c) out.push_back(e);
  }
  return out;
}

std::vector<Event> build_trace(std::vector<Event> events) {
  if (events.empty()) throw Error(ErrorCode::EmptyEventSet, "cannot build a trace from no events");
  // Sort keys once; Event::time() is a map lookup.
  std::vector<std::tuple<Timestamp, std::size_t, std::size_t>> keys;
  keys.reserve(events.size());
  for (std::size_t i = 0; i < events.size(); ++i) {
    keys.emplace_back(events[i].time(), events[i].index, i);
  }
  std::sort(keys.begin(), keys.end());
  std::vector<Event> out;
  out.reserve(events.size());
  for (const auto& k : keys) out.push_back(std::move(events[std::get<2>(k)]));
  return out;
}

StructuredEventLog extract_log(const EventTable& table, std::string_view id) {
  if (id == kTimeAttribute) {
    throw Error(ErrorCode::TimeAsCaseId, "time cannot be used as case identifier");
  }
  // Header columns count as known so that an empty table extracts to an empty log.
  auto names = attribute_names(table);
  names.insert(table.columns().begin(), table.columns().end());
  if (!names.contains(id)) {
    throw Error(ErrorCode::UnknownAttribute,
                "attribute '" + std::string(id) + "' is not defined on any event");
  }
  const bool has_activity = std::any_of(names.begin(), names.end(), [&](const std::string& n) {
    return n != kTimeAttribute && n != id;
  });
  if (!has_activity) {
    throw Error(ErrorCode::NoActivityAttribute,
                "no attribute besides time and '" + std::string(id) + "' to describe events");
  }

  std::map<AttributeValue, std::vector<Event>> groups;
  std::size_t uncorrelated = 0;
  bool label_values = false;
  for (const auto& e : table.events()) {
    const auto& v = get_attr(e, id);
    if (v.is_undefined()) {
      ++uncorrelated;
      continue;
    }
    label_values = label_values || looks_like_label(v);
    groups[v].push_back(e);
  }

  std::vector<Case> result;
  result.reserve(groups.size());
  for (auto& [value, events] : groups) {
    result.push_back(Case{value, {}, build_trace(std::move(events))});
  }

  std::vector<std::string> warnings;
  if (uncorrelated > 0) warnings.push_back("events uncorrelated: " + std::to_string(uncorrelated));
  if (label_values) {
    warnings.push_back("values of '" + std::string(id) +
                       "' look like labels rather than entity identifiers");
  }
  return StructuredEventLog::from_cases(std::string(id), std::move(result), table.columns(),
                                        uncorrelated, std::move(warnings));
}

PartialOrderTrace::PartialOrderTrace(std::vector<Event> events)
    : events_(build_trace(std::move(events))) {}

bool PartialOrderTrace::precedes(std::size_t i, std::size_t j) const {
  return events_.at(i).time() < events_.at(j).time();
}

std::vector<std::pair<std::size_t, std::size_t>> PartialOrderTrace::relation() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < events_.size(); ++i) {
    for (std::size_t j = 0; j < events_.size(); ++j) {
      if (precedes(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

bool PartialOrderTrace::is_linearization(std::span<const Event> sequence) const {
  if (sequence.size() != events_.size()) return false;
  std::unordered_map<std::size_t, std::size_t> position;
  for (std::size_t i = 0; i < events_.size(); ++i) position.emplace(events_[i].index, i);
  std::vector<std::size_t> mapped;
  mapped.reserve(sequence.size());
  std::vector<bool> seen(events_.size(), false);
  for (const auto& e : sequence) {
    auto it = position.find(e.index);
    if (it == position.end() || seen[it->second]) return false;
    seen[it->second] = true;
    mapped.push_back(it->second);
  }
  for (std::size_t a = 0; a < mapped.size(); ++a) {
    for (std::size_t b = a + 1; b < mapped.size(); ++b) {
      if (precedes(mapped[b], mapped[a])) return false;
    }
  }
  return true;
}

PartialOrderTrace partial_order_trace(std::vector<Event> events) {
  return PartialOrderTrace(std::move(events));
}

}  // namespace evlog
