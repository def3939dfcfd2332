#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "evlog/classifier.hpp"
#include "evlog/log.hpp"

namespace evlog {

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge, In, NotIn, Defined, Undefined };

/// Where a comparison reads its attribute from. `Event` is only valid in
/// event-level predicates; all others need a case.
enum class Scope { Event, Case, First, Last, At };

/// Event-level predicates filter events (projection), case-level predicates
/// filter cases (selection). `Any` nodes (constants) fit both.
enum class PredicateLevel { Any, Event, Case };

class Predicate;

namespace node {

struct Constant {
  bool value = true;
};
struct And {
  std::vector<Predicate> args;
};
struct Or {
  std::vector<Predicate> args;
};
struct Not {
  std::vector<Predicate> arg;  // exactly one element
};
/// attribute <op> operand(s). For Scope::At, `position` indexes the trace;
/// negative positions count from the end.
struct Compare {
  Scope scope = Scope::Event;
  std::string attr;
  std::int64_t position = 0;
  CompareOp op = CompareOp::Eq;
  std::vector<AttributeValue> operands;
};
/// time(last event) - time(first event) in milliseconds; false on an empty trace.
struct Duration {
  CompareOp op = CompareOp::Lt;
  std::int64_t millis = 0;
};
struct TraceLength {
  CompareOp op = CompareOp::Gt;
  std::int64_t value = 0;
};
/// Number of cases in the log sharing this case's simple trace.
struct VariantFrequency {
  Classifier classifier;
  CompareOp op = CompareOp::Ge;
  std::int64_t threshold = 0;
};
/// Number of events in the log sharing this event's class.
struct LogFrequency {
  Classifier classifier;
  CompareOp op = CompareOp::Ge;
  std::int64_t threshold = 0;
};
/// True iff no later event of the same trace has the same class.
struct LastOccurrence {
  Classifier classifier;
};

}  // namespace node

/// Immutable predicate AST; copies share structure.
class Predicate {
public:
  using Node = std::variant<node::Constant, node::And, node::Or, node::Not, node::Compare,
                            node::Duration, node::TraceLength, node::VariantFrequency,
                            node::LogFrequency, node::LastOccurrence>;

  Predicate() : Predicate(node::Constant{true}) {}
  template <class N>
    requires std::is_constructible_v<Node, N&&>
  Predicate(N&& n) : node_(std::make_shared<const Node>(std::forward<N>(n))) {}

  const Node& node() const noexcept { return *node_; }

  /// Throws PredicateArityError when event-only and case-only nodes mix.
  PredicateLevel level() const;

  /// Every classifier referenced by a log-context node.
  std::vector<Classifier> classifiers() const;

private:
  std::shared_ptr<const Node> node_;
};

// Builders for the common shapes.
Predicate always(bool value);
Predicate all_of(std::vector<Predicate> args);
Predicate any_of(std::vector<Predicate> args);
Predicate negate(Predicate p);
Predicate attr_cmp(Scope scope, std::string attr, CompareOp op, AttributeValue operand);
Predicate attr_in(Scope scope, std::string attr, std::vector<AttributeValue> operands);
Predicate attr_defined(Scope scope, std::string attr);

/// Log-wide statistics a predicate needs, computed once from the log state
/// the predicate is evaluated against.
class LogContext {
public:
  LogContext(const StructuredEventLog& log, const Predicate& p);

  std::size_t variant_frequency(const Classifier& cl, const Case& c) const;
  std::size_t class_frequency(const Classifier& cl, const EventClass& k) const;

private:
  struct Stats {
    std::set<EventClass> alphabet;
    std::map<SimpleTrace, std::size_t> variants;
    std::map<AttributeValue, const SimpleTrace*> case_variant;
    std::map<EventClass, std::size_t> classes;
  };
  std::map<Classifier, Stats> stats_;
};

bool evaluate_case(const Predicate& p, const Case& c, const LogContext& ctx);

/// `position` is the index of the event inside `owner.trace`.
bool evaluate_event(const Predicate& p, const Case& owner, std::size_t position,
                    const LogContext& ctx);

}  // namespace evlog
