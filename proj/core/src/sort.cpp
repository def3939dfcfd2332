#include "evlog/sort.hpp"

#include <algorithm>
#include <map>

#include "evlog/error.hpp"

namespace evlog {

EventTable sort_table(const EventTable& table, const SortSpec& spec) {
  if (!spec.then_by_time) {
    throw Error(ErrorCode::SchemaError, "events must be ordered by time within each group");
  }
  if (spec.group_by && !attribute_names(table).contains(*spec.group_by)) {
    throw Error(ErrorCode::UnknownAttribute, "cannot group by unknown attribute '" +
                                                 *spec.group_by + "'");
  }

  // Rank of each event's group; undefined values share the last rank.
  std::vector<std::size_t> rank(table.size(), 0);
  if (spec.group_by) {
    std::map<AttributeValue, std::size_t> first_seen;
    for (const auto& e : table.events()) {
      const auto& v = get_attr(e, *spec.group_by);
      if (v.is_defined()) first_seen.emplace(v, first_seen.size());
    }
    for (const auto& e : table.events()) {
      const auto& v = get_attr(e, *spec.group_by);
      rank[e.index] = v.is_defined() ? first_seen.at(v) : first_seen.size();
    }
  }

  std::vector<std::size_t> order(table.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (rank[a] != rank[b]) return rank[a] < rank[b];
    return table[a].time() < table[b].time();
  });

  std::vector<Event> events;
  events.reserve(order.size());
  for (std::size_t i : order) {
    Event e = table[i];
    e.attrs.emplace(std::string(kSourceIndexAttribute),
                    AttributeValue::integer(static_cast<std::int64_t>(i)));
    events.push_back(std::move(e));
  }
  auto columns = table.columns();
  if (!columns.empty() &&
      std::find(columns.begin(), columns.end(), kSourceIndexAttribute) == columns.end()) {
    columns.emplace_back(kSourceIndexAttribute);
  }
  return EventTable(std::move(events), table.shared_attribute(), std::move(columns));
}

}  // namespace evlog
