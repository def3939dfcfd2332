#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace evlog {

/// Milliseconds since the Unix epoch, UTC.
struct Timestamp {
  std::int64_t millis = 0;

  friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

/// Tagged attribute value. A default-constructed value is undefined (⊥),
/// which is the only way "missing" is represented.
///
/// Values compare by tag first and payload second, so Int(23) != Text("23").
/// Sets hold no undefined members, no duplicates, and no nested sets; their
/// members are kept sorted.
class AttributeValue {
public:
  enum class Kind { Undefined, Int, Real, Time, Text, Set };

  AttributeValue() = default;

  static AttributeValue integer(std::int64_t v);
  static AttributeValue real(double v);
  static AttributeValue time(Timestamp v);
  static AttributeValue text(std::string v);
  /// Nested sets are flattened into their members; undefined members dropped.
  static AttributeValue set(std::vector<AttributeValue> members);

  Kind kind() const noexcept { return static_cast<Kind>(data_.index()); }
  bool is_undefined() const noexcept { return kind() == Kind::Undefined; }
  bool is_defined() const noexcept { return !is_undefined(); }

  const std::int64_t* as_int() const noexcept { return std::get_if<std::int64_t>(&data_); }
  const double* as_real() const noexcept { return std::get_if<double>(&data_); }
  const Timestamp* as_time() const noexcept { return std::get_if<Timestamp>(&data_); }
  const std::string* as_text() const noexcept { return std::get_if<std::string>(&data_); }
  const std::vector<AttributeValue>* as_set() const noexcept {
    return std::get_if<std::vector<AttributeValue>>(&data_);
  }

  /// Display form: decimal numbers, ISO-8601 times, "{a, b}" for sets and
  /// the empty string for undefined.
  std::string to_string() const;

  friend bool operator==(const AttributeValue& a, const AttributeValue& b);
  friend std::strong_ordering operator<=>(const AttributeValue& a, const AttributeValue& b);

private:
  using Data = std::variant<std::monostate, std::int64_t, double, Timestamp, std::string,
                            std::vector<AttributeValue>>;
  explicit AttributeValue(Data d) : data_(std::move(d)) {}

  Data data_;
};

std::string_view to_string(AttributeValue::Kind kind) noexcept;

/// Shortest round-trip rendering of a finite double.
std::string format_real(double v);

}  // namespace evlog
