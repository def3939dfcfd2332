#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace evlog::cli {

/// Exit codes of the command-line front end.
inline constexpr int kOk = 0;
inline constexpr int kDataError = 1;
inline constexpr int kUsageError = 2;

/// Runs the command line `args` (without the program name). Data goes to
/// `out`, diagnostics (stats, warnings, errors) to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace evlog::cli
