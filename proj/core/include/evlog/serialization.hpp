#pragma once

#include <vector>

#include <json.hpp>

#include "evlog/preprocess.hpp"

namespace evlog {

using Json = nlohmann::json;

/// JSON form of attribute values: strings, integers, finite numbers,
/// {"time": "<ISO-8601>"} and arrays (sets). null is undefined.
AttributeValue value_from_json(const Json& j);
Json value_to_json(const AttributeValue& v);

/// Predicate AST as documented in docs/stack-schema.md. Throws SchemaError.
Predicate predicate_from_json(const Json& j);
Json predicate_to_json(const Predicate& p);

/// Accepts {"version": 1, "steps": [...]} or a bare array of steps. Errors
/// name the offending step.
FilterStack stack_from_json(const Json& j);
Json stack_to_json(const FilterStack& stack);

Json stats_to_json(const std::vector<StepStats>& stats);

}  // namespace evlog
