#include "evlog/error.hpp"

namespace evlog {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MissingTimeColumn: return "MissingTimeColumn";
    case ErrorCode::UnparseableTimestamp: return "UnparseableTimestamp";
    case ErrorCode::RowWithOnlyTime: return "RowWithOnlyTime";
    case ErrorCode::MalformedCsv: return "MalformedCsv";
    case ErrorCode::InvalidEvent: return "InvalidEvent";
    case ErrorCode::InvalidTable: return "InvalidTable";
    case ErrorCode::UnknownAttribute: return "UnknownAttribute";
    case ErrorCode::TimeAsCaseId: return "TimeAsCaseId";
    case ErrorCode::NoActivityAttribute: return "NoActivityAttribute";
    case ErrorCode::EmptyEventSet: return "EmptyEventSet";
    case ErrorCode::PredicateArityError: return "PredicateArityError";
    case ErrorCode::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::optional<std::size_t> row)
    : std::runtime_error(message), code_(code), row_(row) {}

Error Error::with_step(std::size_t step) const {
  Error e(code_, "step " + std::to_string(step) + ": " + what(), row_);
  e.step_ = step;
  return e;
}

}  // namespace evlog
