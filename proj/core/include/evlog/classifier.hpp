#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "evlog/log.hpp"

namespace evlog {

/// Maps an event to the tuple of values of `attrs`.
class Classifier {
public:
  /// Throws SchemaError for an empty or duplicated attribute list.
  explicit Classifier(std::vector<std::string> attrs, std::string separator = "+");

  /// "action+life-cycle" -> {action, life-cycle}.
  static Classifier parse(std::string_view spec, char separator = '+');

  const std::vector<std::string>& attributes() const noexcept { return attrs_; }
  const std::string& separator() const noexcept { return separator_; }
  /// Attribute names joined by the separator.
  std::string name() const;

  friend bool operator==(const Classifier&, const Classifier&) = default;
  friend auto operator<=>(const Classifier&, const Classifier&) = default;

private:
  std::vector<std::string> attrs_;
  std::string separator_;
};

/// Value of a classifier on one event. Compared structurally as a tuple so
/// that values containing the separator never collide; the joined text is
/// for display only. An empty tuple is the undefined class.
class EventClass {
public:
  EventClass() = default;
  EventClass(std::vector<AttributeValue> parts, std::string_view separator);

  bool is_undefined() const noexcept { return parts_.empty(); }
  const std::vector<AttributeValue>& parts() const noexcept { return parts_; }
  const std::string& text() const noexcept { return text_; }

  friend bool operator==(const EventClass& a, const EventClass& b) { return a.parts_ == b.parts_; }
  friend std::strong_ordering operator<=>(const EventClass& a, const EventClass& b) {
    return std::lexicographical_compare_three_way(a.parts_.begin(), a.parts_.end(),
                                                  b.parts_.begin(), b.parts_.end());
  }

private:
  std::vector<AttributeValue> parts_;
  std::string text_;
};

using SimpleTrace = std::vector<EventClass>;

/// Undefined as soon as one component attribute is undefined on `e`.
EventClass classify(const Classifier& cl, const Event& e);

/// Defined classes over all trace events of the log.
std::set<EventClass> event_classes(const StructuredEventLog& log, const Classifier& cl);

/// Classes of the trace in order, keeping only those in `alphabet`.
SimpleTrace simple_trace(const Classifier& cl, const Case& c, const std::set<EventClass>& alphabet);

struct Variant {
  std::size_t count = 0;
  SimpleTrace classes;
};

/// Multiset of simple traces, one entry per case of the source log.
struct SimpleEventLog {
  std::set<EventClass> alphabet;
  std::map<SimpleTrace, std::size_t> variants;

  std::size_t case_count() const;
  /// Variants by descending count, then lexicographically by class text.
  std::vector<Variant> sorted_variants() const;
  /// Occurrences of each class across all simple traces, weighted by count.
  std::map<EventClass, std::size_t> class_frequencies() const;
};

SimpleEventLog simple_log(const StructuredEventLog& log, const Classifier& cl);

/// One line per variant, "count<TAB>class1,class2,...", in sorted_variants()
/// order.
std::string format_variants(const SimpleEventLog& log);

}  // namespace evlog
