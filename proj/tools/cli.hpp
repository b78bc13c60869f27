#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tunneltime::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRegime = 3;

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses `MIN:MAX:STEP`, `F1,F2,...` or a single value into a sorted,
/// de-duplicated positive grid. Throws InvalidArgument.
std::vector<double> parse_grid(const std::string& text);

}  // namespace tunneltime::cli
