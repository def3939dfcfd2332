#include "evlog/value.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "evlog/timestamp.hpp"

namespace evlog {

AttributeValue AttributeValue::integer(std::int64_t v) { return AttributeValue(Data{v}); }

AttributeValue AttributeValue::real(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("real attribute values must be finite");
  return AttributeValue(Data{v});
}

AttributeValue AttributeValue::time(Timestamp v) { return AttributeValue(Data{v}); }

AttributeValue AttributeValue::text(std::string v) {
  return AttributeValue(Data{std::in_place_index<4>, std::move(v)});
}

AttributeValue AttributeValue::set(std::vector<AttributeValue> members) {
  std::vector<AttributeValue> flat;
  flat.reserve(members.size());
  for (auto& m : members) {
    if (const auto* inner = m.as_set()) {
      flat.insert(flat.end(), inner->begin(), inner->end());
    } else if (m.is_defined()) {
      flat.push_back(std::move(m));
    }
  }
  std::sort(flat.begin(), flat.end());
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  return AttributeValue(Data{std::in_place_index<5>, std::move(flat)});
}

std::string format_real(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string AttributeValue::to_string() const {
  switch (kind()) {
    case Kind::Undefined: return {};
    case Kind::Int: return std::to_string(*as_int());
    case Kind::Real: return format_real(*as_real());
    case Kind::Time: return format_iso8601(*as_time());
    case Kind::Text: return *as_text();
    case Kind::Set: {
      std::string out = "{";
      const auto& members = *as_set();
      for (std::size_t i = 0; i < members.size(); ++i) {
        if (i) out += ", ";
        out += members[i].to_string();
      }
      return out + "}";
    }
  }
  return {};
}

bool operator==(const AttributeValue& a, const AttributeValue& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const AttributeValue& a, const AttributeValue& b) {
  if (auto c = a.data_.index() <=> b.data_.index(); c != 0) return c;
  switch (a.kind()) {
    case AttributeValue::Kind::Undefined: return std::strong_ordering::equal;
    case AttributeValue::Kind::Int: return *a.as_int() <=> *b.as_int();
    case AttributeValue::Kind::Real: {
      const double x = *a.as_real();
      const double y = *b.as_real();
      if (x < y) return std::strong_ordering::less;
      if (y < x) return std::strong_ordering::greater;
      return std::strong_ordering::equal;
    }
    case AttributeValue::Kind::Time: return *a.as_time() <=> *b.as_time();
    case AttributeValue::Kind::Text: return a.as_text()->compare(*b.as_text()) <=> 0;
    case AttributeValue::Kind::Set: {
      const auto& x = *a.as_set();
      const auto& y = *b.as_set();
      return std::lexicographical_compare_three_way(x.begin(), x.end(), y.begin(), y.end());
    }
  }
  return std::strong_ordering::equal;
}

std::string_view to_string(AttributeValue::Kind kind) noexcept {
  switch (kind) {
    case AttributeValue::Kind::Undefined: return "undefined";
    case AttributeValue::Kind::Int: return "int";
    case AttributeValue::Kind::Real: return "real";
    case AttributeValue::Kind::Time: return "time";
    case AttributeValue::Kind::Text: return "text";
    case AttributeValue::Kind::Set: return "set";
  }
  return "undefined";
}

}  // namespace evlog
