#include "evlog/serialization.hpp"

#include <cmath>

#include "evlog/error.hpp"
#include "evlog/timestamp.hpp"

namespace evlog {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void schema(const std::string& message) {
  throw Error(ErrorCode::SchemaError, message);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string string_field(const Json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_string()) schema(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::int64_t int_field(const Json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_integer()) schema(std::string("field '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

constexpr std::pair<CompareOp, const char*> kOps[] = {
    {CompareOp::Eq, "eq"},         {CompareOp::Ne, "ne"},       {CompareOp::Lt, "lt"},
    {CompareOp::Le, "le"},         {CompareOp::Gt, "gt"},       {CompareOp::Ge, "ge"},
    {CompareOp::In, "in"},         {CompareOp::NotIn, "not_in"}, {CompareOp::Defined, "defined"},
    {CompareOp::Undefined, "undefined"},
};

constexpr std::pair<Scope, const char*> kScopes[] = {
    {Scope::Event, "event"}, {Scope::Case, "case"}, {Scope::First, "first"},
    {Scope::Last, "last"},   {Scope::At, "at"},
};

CompareOp parse_op(const std::string& s) {
  for (const auto& [op, name] : kOps) {
    if (s == name) return op;
  }
  schema("unknown operator '" + s + "'");
}

const char* op_name(CompareOp op) {
  for (const auto& [o, name] : kOps) {
    if (o == op) return name;
  }
  return "eq";
}

CompareOp parse_count_op(const Json& j) {
  const auto op = parse_op(string_field(j, "op"));
  if (op == CompareOp::In || op == CompareOp::NotIn || op == CompareOp::Defined ||
      op == CompareOp::Undefined) {
    schema("operator '" + std::string(op_name(op)) + "' cannot compare counts");
  }
  return op;
}

Scope parse_scope(const std::string& s) {
  for (const auto& [sc, name] : kScopes) {
    if (s == name) return sc;
  }
  schema("unknown scope '" + s + "'");
}

const char* scope_name(Scope scope) {
  for (const auto& [s, name] : kScopes) {
    if (s == scope) return name;
  }
  return "event";
}

Classifier classifier_from_json(const Json& j) {
  if (j.is_string()) return Classifier::parse(j.get<std::string>());
  if (!j.is_array()) schema("classifier must be an array of attribute names");
  std::vector<std::string> attrs;
  for (const auto& a : j) {
    if (!a.is_string()) schema("classifier attribute names must be strings");
    attrs.push_back(a.get<std::string>());
  }
  return Classifier(std::move(attrs));
}

Json classifier_to_json(const Classifier& cl) { return cl.attributes(); }

std::vector<Predicate> args_from_json(const Json& j) {
  const auto& args = field(j, "args");
  if (!args.is_array()) schema("field 'args' must be an array");
  std::vector<Predicate> out;
  for (const auto& a : args) out.push_back(predicate_from_json(a));
  return out;
}

constexpr std::pair<ReplacementPolicy, const char*> kPolicies[] = {
    {ReplacementPolicy::KeepLast, "keep-last"},
    {ReplacementPolicy::KeepFirst, "keep-first"},
    {ReplacementPolicy::Merge, "merge"},
};

constexpr std::pair<MergeTimestamp, const char*> kTimestamps[] = {
    {MergeTimestamp::First, "first"},
    {MergeTimestamp::Last, "last"},
    {MergeTimestamp::Midpoint, "midpoint"},
};

FilterStep step_from_json(const Json& j) {
  const auto op = string_field(j, "op");
  if (op == "select" || op == "project") {
    auto p = predicate_from_json(field(j, "predicate"));
    const auto level = p.level();
    if (op == "select") {
      if (level == PredicateLevel::Event) {
        throw Error(ErrorCode::PredicateArityError, "select needs a case-level predicate");
      }
      return SelectStep{std::move(p)};
    }
    if (level == PredicateLevel::Case) {
      throw Error(ErrorCode::PredicateArityError, "project needs an event-level predicate");
    }
    return ProjectStep{std::move(p)};
  }
  if (op == "aggregate") {
    AggregationSpec spec{classifier_from_json(field(j, "grouping"))};
    if (j.contains("policy")) {
      const auto name = string_field(j, "policy");
      bool found = false;
      for (const auto& [p, n] : kPolicies) {
        if (name == n) {
          spec.policy = p;
          found = true;
        }
      }
      if (!found) schema("unknown aggregation policy '" + name + "'");
    }
    if (j.contains("timestamp")) {
      const auto name = string_field(j, "timestamp");
      bool found = false;
      for (const auto& [t, n] : kTimestamps) {
        if (name == n) {
          spec.timestamp = t;
          found = true;
        }
      }
      if (!found) schema("unknown merge timestamp '" + name + "'");
    }
    if (j.contains("collect")) {
      const auto& c = j.at("collect");
      if (!c.is_array()) schema("field 'collect' must be an array");
      for (const auto& a : c) {
        if (!a.is_string()) schema("field 'collect' must list attribute names");
        spec.collect.push_back(a.get<std::string>());
      }
    }
    return AggregateStep{std::move(spec)};
  }
  schema("unknown step op '" + op + "'");
}

}  // namespace

AttributeValue value_from_json(const Json& j) {
  if (j.is_null()) return {};
  if (j.is_string()) return AttributeValue::text(j.get<std::string>());
  if (j.is_number_integer()) return AttributeValue::integer(j.get<std::int64_t>());
  if (j.is_number_float()) {
    const double d = j.get<double>();
    if (!std::isfinite(d)) schema("numbers must be finite");
    return AttributeValue::real(d);
  }
  if (j.is_object() && j.size() == 1 && j.contains("time")) {
    const auto& t = j.at("time");
    if (t.is_number_integer()) return AttributeValue::time({t.get<std::int64_t>()});
    if (t.is_string()) {
      if (auto ts = parse_timestamp(t.get<std::string>(), kIso8601)) {
        return AttributeValue::time(*ts);
      }
    }
    schema("time values must be ISO-8601 strings or epoch milliseconds");
  }
  if (j.is_array()) {
    std::vector<AttributeValue> members;
    for (const auto& m : j) members.push_back(value_from_json(m));
    return AttributeValue::set(std::move(members));
  }
  schema("unsupported value " + j.dump());
}

Json value_to_json(const AttributeValue& v) {
  switch (v.kind()) {
    case AttributeValue::Kind::Undefined: return nullptr;
    case AttributeValue::Kind::Int: return *v.as_int();
    case AttributeValue::Kind::Real: return *v.as_real();
    case AttributeValue::Kind::Time: return Json{{"time", format_iso8601(*v.as_time())}};
    case AttributeValue::Kind::Text: return *v.as_text();
    case AttributeValue::Kind::Set: {
      Json arr = Json::array();
      for (const auto& m : *v.as_set()) arr.push_back(value_to_json(m));
      return arr;
    }
  }
  return nullptr;
}

Predicate predicate_from_json(const Json& j) {
  if (!j.is_object()) schema("predicate must be an object");
  const auto kind = string_field(j, "kind");
  if (kind == "true") return always(true);
  if (kind == "false") return always(false);
  if (kind == "and") return node::And{args_from_json(j)};
  if (kind == "or") return node::Or{args_from_json(j)};
  if (kind == "not") return negate(predicate_from_json(field(j, "arg")));
  if (kind == "attr") {
    node::Compare c;
    c.scope = j.contains("scope") ? parse_scope(string_field(j, "scope")) : Scope::Event;
    c.attr = string_field(j, "attr");
    if (c.attr.empty()) schema("attribute name must not be empty");
    if (c.scope == Scope::At) c.position = int_field(j, "index");
    c.op = parse_op(string_field(j, "op"));
    switch (c.op) {
      case CompareOp::Defined:
      case CompareOp::Undefined: break;
      case CompareOp::In:
      case CompareOp::NotIn: {
        const auto& values = field(j, "values");
        if (!values.is_array()) schema("field 'values' must be an array");
        for (const auto& v : values) c.operands.push_back(value_from_json(v));
        break;
      }
      default: {
        auto v = value_from_json(field(j, "value"));
        if (v.is_undefined()) schema("comparison value must not be null; use op 'defined'");
        c.operands.push_back(std::move(v));
      }
    }
    return c;
  }
  if (kind == "duration") return node::Duration{parse_count_op(j), int_field(j, "ms")};
  if (kind == "trace_length") return node::TraceLength{parse_count_op(j), int_field(j, "value")};
  if (kind == "variant_frequency") {
    return node::VariantFrequency{classifier_from_json(field(j, "classifier")), parse_count_op(j),
                                  int_field(j, "value")};
  }
  if (kind == "log_frequency") {
    return node::LogFrequency{classifier_from_json(field(j, "classifier")), parse_count_op(j),
                              int_field(j, "value")};
  }
  if (kind == "last_occurrence") {
    return node::LastOccurrence{classifier_from_json(field(j, "classifier"))};
  }
  schema("unknown predicate kind '" + kind + "'");
}

Json predicate_to_json(const Predicate& p) {
  return std::visit(
      overloaded{
          [](const node::Constant& n) { return Json{{"kind", n.value ? "true" : "false"}}; },
          [](const node::And& n) {
            Json args = Json::array();
            for (const auto& a : n.args) args.push_back(predicate_to_json(a));
            return Json{{"kind", "and"}, {"args", args}};
          },
          [](const node::Or& n) {
            Json args = Json::array();
            for (const auto& a : n.args) args.push_back(predicate_to_json(a));
            return Json{{"kind", "or"}, {"args", args}};
          },
          [](const node::Not& n) {
            return Json{{"kind", "not"}, {"arg", predicate_to_json(n.arg.at(0))}};
          },
          [](const node::Compare& n) {
            Json j{{"kind", "attr"}, {"scope", scope_name(n.scope)}, {"attr", n.attr},
                   {"op", op_name(n.op)}};
            if (n.scope == Scope::At) j["index"] = n.position;
            if (n.op == CompareOp::In || n.op == CompareOp::NotIn) {
              Json values = Json::array();
              for (const auto& v : n.operands) values.push_back(value_to_json(v));
              j["values"] = values;
            } else if (!n.operands.empty()) {
              j["value"] = value_to_json(n.operands.front());
            }
            return j;
          },
          [](const node::Duration& n) {
            return Json{{"kind", "duration"}, {"op", op_name(n.op)}, {"ms", n.millis}};
          },
          [](const node::TraceLength& n) {
            return Json{{"kind", "trace_length"}, {"op", op_name(n.op)}, {"value", n.value}};
          },
          [](const node::VariantFrequency& n) {
            return Json{{"kind", "variant_frequency"},
                        {"classifier", classifier_to_json(n.classifier)},
                        {"op", op_name(n.op)},
                        {"value", n.threshold}};
          },
          [](const node::LogFrequency& n) {
            return Json{{"kind", "log_frequency"},
                        {"classifier", classifier_to_json(n.classifier)},
                        {"op", op_name(n.op)},
                        {"value", n.threshold}};
          },
          [](const node::LastOccurrence& n) {
            return Json{{"kind", "last_occurrence"},
                        {"classifier", classifier_to_json(n.classifier)}};
          },
      },
      p.node());
}

FilterStack stack_from_json(const Json& j) {
  const Json* steps = &j;
  if (j.is_object()) {
    if (j.contains("version") && j.at("version") != 1) schema("unsupported stack version");
    steps = &field(j, "steps");
  }
  if (!steps->is_array()) schema("stack must be an array of steps or {\"steps\": [...]}");
  FilterStack stack;
  for (std::size_t i = 0; i < steps->size(); ++i) {
    try {
      stack.steps.push_back(step_from_json(steps->at(i)));
    } catch (const Error& e) {
      throw e.with_step(i);
    }
  }
  return stack;
}

Json stack_to_json(const FilterStack& stack) {
  Json steps = Json::array();
  for (const auto& step : stack.steps) {
    std::visit(overloaded{
                   [&](const SelectStep& s) {
                     steps.push_back({{"op", "select"}, {"predicate", predicate_to_json(s.predicate)}});
                   },
                   [&](const ProjectStep& s) {
                     steps.push_back({{"op", "project"}, {"predicate", predicate_to_json(s.predicate)}});
                   },
                   [&](const AggregateStep& s) {
                     const auto& spec = s.spec;
                     Json j{{"op", "aggregate"}, {"grouping", classifier_to_json(spec.grouping)}};
                     for (const auto& [p, n] : kPolicies) {
                       if (p == spec.policy) j["policy"] = n;
                     }
                     for (const auto& [t, n] : kTimestamps) {
                       if (t == spec.timestamp) j["timestamp"] = n;
                     }
                     j["collect"] = spec.collect;
                     steps.push_back(std::move(j));
                   },
               },
               step);
  }
  return Json{{"version", 1}, {"steps", steps}};
}

Json stats_to_json(const std::vector<StepStats>& stats) {
  Json out = Json::array();
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const auto& s = stats[i];
    out.push_back({{"step", i},
                   {"kind", s.kind},
                   {"cases_in", s.cases_in},
                   {"cases_out", s.cases_out},
                   {"events_in", s.events_in},
                   {"events_out", s.events_out}});
  }
  return out;
}

}  // namespace evlog
