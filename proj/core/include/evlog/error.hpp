#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace evlog {

enum class ErrorCode {
  MissingTimeColumn,
  UnparseableTimestamp,
  RowWithOnlyTime,
  MalformedCsv,
  InvalidEvent,
  InvalidTable,
  UnknownAttribute,
  TimeAsCaseId,
  NoActivityAttribute,
  EmptyEventSet,
  PredicateArityError,
  SchemaError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. `row` is set for ingestion errors
/// (0-based data row), `step` for errors raised while applying a filter stack.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> row = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> row() const noexcept { return row_; }
  std::optional<std::size_t> step() const noexcept { return step_; }

  Error with_step(std::size_t step) const;

private:
  ErrorCode code_;
  std::optional<std::size_t> row_;
  std::optional<std::size_t> step_;
};

}  // namespace evlog
