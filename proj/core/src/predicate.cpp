#include "evlog/predicate.hpp"

#include <algorithm>
#include <optional>

#include "evlog/error.hpp"

namespace evlog {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

PredicateLevel combine(PredicateLevel a, PredicateLevel b) {
  if (a == PredicateLevel::Any) return b;
  if (b == PredicateLevel::Any || a == b) return a;
  throw Error(ErrorCode::PredicateArityError,
              "predicate mixes event-level and case-level conditions");
}

bool compare_count(CompareOp op, std::int64_t lhs, std::int64_t rhs) {
  switch (op) {
    case CompareOp::Eq: return lhs == rhs;
    case CompareOp::Ne: return lhs != rhs;
    case CompareOp::Lt: return lhs < rhs;
    case CompareOp::Le: return lhs <= rhs;
    case CompareOp::Gt: return lhs > rhs;
    case CompareOp::Ge: return lhs >= rhs;
    default:
      throw Error(ErrorCode::SchemaError, "operator not allowed on counts");
  }
}

std::optional<double> numeric(const AttributeValue& v) {
  if (const auto* i = v.as_int()) return static_cast<double>(*i);
  if (const auto* d = v.as_real()) return *d;
  return std::nullopt;
}

/// Ordering between two defined values: same kind, or both numeric.
std::optional<std::partial_ordering> order(const AttributeValue& a, const AttributeValue& b) {
  if (a.kind() == b.kind()) return a <=> b;
  auto x = numeric(a);
  auto y = numeric(b);
  if (x && y) return *x <=> *y;
  return std::nullopt;
}

bool compare_value(CompareOp op, const AttributeValue& v,
                   const std::vector<AttributeValue>& operands) {
  switch (op) {
    case CompareOp::Defined: return v.is_defined();
    case CompareOp::Undefined: return v.is_undefined();
    case CompareOp::In:
      return v.is_defined() && std::find(operands.begin(), operands.end(), v) != operands.end();
    case CompareOp::NotIn:
      return !(v.is_defined() && std::find(operands.begin(), operands.end(), v) != operands.end());
    case CompareOp::Eq: return v.is_defined() && v == operands.at(0);
    case CompareOp::Ne: return !(v.is_defined() && v == operands.at(0));
    case CompareOp::Lt:
    case CompareOp::Le:
    case CompareOp::Gt:
    case CompareOp::Ge: {
      if (v.is_undefined()) return false;
      const auto o = order(v, operands.at(0));
      if (!o) return false;
      if (op == CompareOp::Lt) return *o < 0;
      if (op == CompareOp::Le) return *o <= 0;
      if (op == CompareOp::Gt) return *o > 0;
      return *o >= 0;
    }
  }
  return false;
}

const AttributeValue kUndefined{};

const AttributeValue& trace_attr(const Case& c, const node::Compare& cmp) {
  const auto& t = c.trace;
  switch (cmp.scope) {
    case Scope::Case: {
      auto it = c.case_attrs.find(cmp.attr);
      return it == c.case_attrs.end() ? kUndefined : it->second;
    }
    case Scope::First: return t.empty() ? kUndefined : get_attr(t.front(), cmp.attr);
    case Scope::Last: return t.empty() ? kUndefined : get_attr(t.back(), cmp.attr);
    case Scope::At: {
      const auto n = static_cast<std::int64_t>(t.size());
      const auto i = cmp.position < 0 ? n + cmp.position : cmp.position;
      return i < 0 || i >= n ? kUndefined : get_attr(t[static_cast<std::size_t>(i)], cmp.attr);
    }
    case Scope::Event: break;
  }
  throw Error(ErrorCode::PredicateArityError, "event attribute used in a case-level predicate");
}

void collect_classifiers(const Predicate& p, std::vector<Classifier>& out) {
  std::visit(overloaded{
                 [&](const node::And& n) {
                   for (const auto& a : n.args) collect_classifiers(a, out);
                 },
                 [&](const node::Or& n) {
                   for (const auto& a : n.args) collect_classifiers(a, out);
                 },
                 [&](const node::Not& n) { collect_classifiers(n.arg.at(0), out); },
                 [&](const node::VariantFrequency& n) { out.push_back(n.classifier); },
                 [&](const node::LogFrequency& n) { out.push_back(n.classifier); },
                 [](const auto&) {},
             },
             p.node());
}

}  // namespace

PredicateLevel Predicate::level() const {
  return std::visit(
      overloaded{
          [](const node::Constant&) { return PredicateLevel::Any; },
          [](const node::And& n) {
            auto l = PredicateLevel::Any;
            for (const auto& a : n.args) l = combine(l, a.level());
            return l;
          },
          [](const node::Or& n) {
            auto l = PredicateLevel::Any;
            for (const auto& a : n.args) l = combine(l, a.level());
            return l;
          },
          [](const node::Not& n) { return n.arg.at(0).level(); },
          [](const node::Compare& n) {
            return n.scope == Scope::Event ? PredicateLevel::Event : PredicateLevel::Case;
          },
          [](const node::Duration&) { return PredicateLevel::Case; },
          [](const node::TraceLength&) { return PredicateLevel::Case; },
          [](const node::VariantFrequency&) { return PredicateLevel::Case; },
          [](const node::LogFrequency&) { return PredicateLevel::Event; },
          [](const node::LastOccurrence&) { return PredicateLevel::Event; },
      },
      *node_);
}

std::vector<Classifier> Predicate::classifiers() const {
  std::vector<Classifier> out;
  collect_classifiers(*this, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Predicate always(bool value) { return node::Constant{value}; }
Predicate all_of(std::vector<Predicate> args) { return node::And{std::move(args)}; }
Predicate any_of(std::vector<Predicate> args) { return node::Or{std::move(args)}; }
Predicate negate(Predicate p) { return node::Not{{std::move(p)}}; }

Predicate attr_cmp(Scope scope, std::string attr, CompareOp op, AttributeValue operand) {
  return node::Compare{scope, std::move(attr), 0, op, {std::move(operand)}};
}

Predicate attr_in(Scope scope, std::string attr, std::vector<AttributeValue> operands) {
  return node::Compare{scope, std::move(attr), 0, CompareOp::In, std::move(operands)};
}

Predicate attr_defined(Scope scope, std::string attr) {
  return node::Compare{scope, std::move(attr), 0, CompareOp::Defined, {}};
}

LogContext::LogContext(const StructuredEventLog& log, const Predicate& p) {
  for (const auto& cl : p.classifiers()) {
    Stats s;
    s.alphabet = event_classes(log, cl);
    std::vector<std::pair<const Case*, SimpleTrace>> traces;
    for (const auto& c : log.cases()) {
      for (const auto& e : c.trace) ++s.classes[classify(cl, e)];
      traces.emplace_back(&c, simple_trace(cl, c, s.alphabet));
    }
    for (auto& [c, t] : traces) {
      auto [it, fresh] = s.variants.emplace(std::move(t), 0);
      ++it->second;
      s.case_variant.emplace(c->id, &it->first);
    }
    stats_.emplace(cl, std::move(s));
  }
}

std::size_t LogContext::variant_frequency(const Classifier& cl, const Case& c) const {
  const auto& s = stats_.at(cl);
  if (auto it = s.case_variant.find(c.id); it != s.case_variant.end()) {
    return s.variants.at(*it->second);
  }
  // A case outside the context log: count the cases sharing its variant.
  auto v = s.variants.find(simple_trace(cl, c, s.alphabet));
  return v == s.variants.end() ? 0 : v->second;
}

std::size_t LogContext::class_frequency(const Classifier& cl, const EventClass& k) const {
  const auto& s = stats_.at(cl);
  auto it = s.classes.find(k);
  return it == s.classes.end() ? 0 : it->second;
}

bool evaluate_case(const Predicate& p, const Case& c, const LogContext& ctx) {
  return std::visit(
      overloaded{
          [](const node::Constant& n) { return n.value; },
          [&](const node::And& n) {
            return std::all_of(n.args.begin(), n.args.end(),
                               [&](const Predicate& a) { return evaluate_case(a, c, ctx); });
          },
          [&](const node::Or& n) {
            return std::any_of(n.args.begin(), n.args.end(),
                               [&](const Predicate& a) { return evaluate_case(a, c, ctx); });
          },
          [&](const node::Not& n) { return !evaluate_case(n.arg.at(0), c, ctx); },
          [&](const node::Compare& n) { return compare_value(n.op, trace_attr(c, n), n.operands); },
          [&](const node::Duration& n) {
            if (c.trace.empty()) return false;
            return compare_count(n.op, c.trace.back().time().millis - c.trace.front().time().millis,
                                 n.millis);
          },
          [&](const node::TraceLength& n) {
            return compare_count(n.op, static_cast<std::int64_t>(c.trace.size()), n.value);
          },
          [&](const node::VariantFrequency& n) {
            return compare_count(
                n.op, static_cast<std::int64_t>(ctx.variant_frequency(n.classifier, c)),
                n.threshold);
          },
          [](const node::LogFrequency&) -> bool {
            throw Error(ErrorCode::PredicateArityError,
                        "log_frequency is an event-level condition");
          },
          [](const node::LastOccurrence&) -> bool {
            throw Error(ErrorCode::PredicateArityError,
                        "last_occurrence is an event-level condition");
          },
      },
      p.node());
}

bool evaluate_event(const Predicate& p, const Case& owner, std::size_t position,
                    const LogContext& ctx) {
  const Event& e = owner.trace.at(position);
  return std::visit(
      overloaded{
          [](const node::Constant& n) { return n.value; },
          [&](const node::And& n) {
            return std::all_of(n.args.begin(), n.args.end(), [&](const Predicate& a) {
              return evaluate_event(a, owner, position, ctx);
            });
          },
          [&](const node::Or& n) {
            return std::any_of(n.args.begin(), n.args.end(), [&](const Predicate& a) {
              return evaluate_event(a, owner, position, ctx);
            });
          },
          [&](const node::Not& n) { return !evaluate_event(n.arg.at(0), owner, position, ctx); },
          [&](const node::Compare& n) {
            if (n.scope != Scope::Event) {
              throw Error(ErrorCode::PredicateArityError,
                          "case-level attribute '" + n.attr + "' used in an event-level predicate");
            }
            return compare_value(n.op, get_attr(e, n.attr), n.operands);
          },
          [&](const node::LogFrequency& n) {
            return compare_count(
                n.op,
                static_cast<std::int64_t>(ctx.class_frequency(n.classifier, classify(n.classifier, e))),
                n.threshold);
          },
          [&](const node::LastOccurrence& n) {
            const auto k = classify(n.classifier, e);
            for (std::size_t j = position + 1; j < owner.trace.size(); ++j) {
              if (classify(n.classifier, owner.trace[j]) == k) return false;
            }
            return true;
          },
          [](const auto&) -> bool {
            throw Error(ErrorCode::PredicateArityError,
                        "case-level condition used in an event-level predicate");
          },
      },
      p.node());
}

}  // namespace evlog
