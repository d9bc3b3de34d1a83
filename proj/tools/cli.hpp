#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace klc::cli {

/// Exit statuses of the command line tool.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kViolation = 2;

/// Runs the tool on `args` (without the program name). Artifacts go to `out`
/// unless --out names a directory; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace klc::cli
