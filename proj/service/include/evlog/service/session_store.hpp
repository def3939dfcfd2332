#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "evlog/csv.hpp"
#include "evlog/inspect.hpp"
#include "evlog/serialization.hpp"

namespace evlog::service {

/// Failure surfaced to HTTP clients as `status` with a JSON error body.
class ApiError : public std::runtime_error {
public:
  ApiError(int status, std::string code, const std::string& message,
           std::optional<std::size_t> step = std::nullopt)
      : std::runtime_error(message), status_(status), code_(std::move(code)), step_(step) {}

  int status() const noexcept { return status_; }
  const std::string& code() const noexcept { return code_; }
  std::optional<std::size_t> step() const noexcept { return step_; }

private:
  int status_;
  std::string code_;
  std::optional<std::size_t> step_;
};

struct StoreOptions {
  std::chrono::steady_clock::duration idle_timeout = std::chrono::hours(1);
  std::function<std::chrono::steady_clock::time_point()> clock = [] {
    return std::chrono::steady_clock::now();
  };
};

/// In-memory analysis sessions. Each session owns an uploaded table, the
/// current (case id, classifier) choice and filter stack, and memoized
/// results. Mutations of one session are serialized; distinct sessions
/// proceed independently. All results are JSON documents (see docs/api.md).
class SessionStore {
public:
  explicit SessionStore(StoreOptions options = {});

  /// {"session_id", "report"}. Throws ApiError(400) when the CSV is rejected.
  Json create(std::string_view csv, const CsvProfile& profile);
  /// Body {"case_id", "classifier"}; returns the full result document.
  Json set_choices(const std::string& id, const Json& body);
  /// Body is a filter stack; returns the result document, or the stack alone
  /// when no choices were made yet.
  Json set_stack(const std::string& id, const Json& body);
  /// Result for the current choices and stack. 409 before choices are set.
  Json result(const std::string& id);
  /// Everything needed to rebuild a client view of the session.
  Json describe(const std::string& id);
  bool remove(const std::string& id);

  /// Drops sessions idle for longer than the timeout; returns how many.
  std::size_t expire_idle();
  std::size_t size() const;
  /// Number of memoized results held by a session (for tests).
  std::size_t cached_results(const std::string& id);

private:
  struct Session;

  std::shared_ptr<Session> find(const std::string& id);
  std::string new_id();

  StoreOptions options_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t counter_ = 0;
};

/// Variant summary of a simple log: variants with counts and class color
/// indices, and the alphabet ranked by frequency.
Json variant_summary(const StructuredEventLog& log, const Classifier& classifier);

Json report_to_json(const TableReport& report);

}  // namespace evlog::service
