#include "evlog/event.hpp"

#include "evlog/error.hpp"

namespace evlog {

namespace {
const AttributeValue kUndefined{};
}

Event Event::make(std::size_t index, AttributeMap attrs) {
  Event e;
  e.index = index;
  for (auto it = attrs.begin(); it != attrs.end();) {
    if (it->second.is_undefined()) {
      it = attrs.erase(it);
    } else {
      ++it;
    }
  }
  e.attrs = std::move(attrs);
  return e;
}

Timestamp Event::time() const {
  const auto* t = get_attr(*this, kTimeAttribute).as_time();
  if (t == nullptr) {
    throw Error(ErrorCode::InvalidEvent,
                "event " + std::to_string(index) + " has no timestamp");
  }
  return *t;
}

const AttributeValue& get_attr(const Event& e, std::string_view name) {
  const auto it = e.attrs.find(name);
  return it == e.attrs.end() ? kUndefined : it->second;
}

std::vector<std::string> validate_event(const Event& e) {
  std::vector<std::string> violations;
  const auto& time = get_attr(e, kTimeAttribute);
  if (time.is_undefined()) {
    violations.emplace_back("time undefined");
  } else if (time.as_time() == nullptr) {
    violations.emplace_back("time is not a timestamp");
  }
  bool other = false;
  for (const auto& [name, value] : e.attrs) {
    if (name != kTimeAttribute && value.is_defined()) {
      other = true;
      break;
    }
  }
  if (!other) violations.emplace_back("no non-time attribute");
  return violations;
}

EventTable::EventTable(std::vector<Event> events, std::string shared_attribute,
                       std::vector<std::string> columns)
    : events_(std::move(events)),
      shared_attribute_(std::move(shared_attribute)),
      columns_(std::move(columns)) {
  for (std::size_t i = 0; i < events_.size(); ++i) {
    auto& e = events_[i];
    e.index = i;
    if (auto v = validate_event(e); !v.empty()) {
      throw Error(ErrorCode::InvalidEvent, "event " + std::to_string(i) + ": " + v.front(), i);
    }
    if (get_attr(e, shared_attribute_).is_undefined()) {
      throw Error(ErrorCode::InvalidTable, "event " + std::to_string(i) +
                                               " does not define shared attribute '" +
                                               shared_attribute_ + "'",
                  i);
    }
  }
}

AttributeNameSet attribute_names(const EventTable& table) {
  AttributeNameSet names;
  for (const auto& e : table.events()) {
    for (const auto& [name, value] : e.attrs) {
      if (value.is_defined()) names.insert(name);
    }
  }
  return names;
}

}  // namespace evlog
