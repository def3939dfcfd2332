#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "evlog/value.hpp"

namespace evlog {

/// Name accepted in format lists for ISO-8601 timestamps
/// (`YYYY-MM-DD[THH:mm[:ss[.fff]]][Z|+hh:mm]`, `T` or a space as separator).
inline constexpr std::string_view kIso8601 = "ISO-8601";

/// Parses `text` against a single pattern built from the tokens YYYY, MM, DD,
/// HH, mm, ss and SSS; any other character must match literally. Fields are
/// fixed-width. Returns nullopt on mismatch or an invalid calendar date.
std::optional<Timestamp> parse_timestamp(std::string_view text, std::string_view pattern);

/// Tries each pattern in order; the first match wins.
std::optional<Timestamp> parse_timestamp(std::string_view text,
                                         std::span<const std::string> patterns);

std::string format_timestamp(Timestamp t, std::string_view pattern);

/// `2018-12-19T15:46:00Z`, with `.mmm` only when the milliseconds are non-zero.
std::string format_iso8601(Timestamp t);

/// XES date form: `2018-12-19T15:46:00.000+00:00`.
std::string format_xes_date(Timestamp t);

}  // namespace evlog
