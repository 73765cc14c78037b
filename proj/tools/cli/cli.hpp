#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lexglr::cli {

/// Exit codes: 0 success, 1 runtime failure, 2 bad configuration (missing or
/// malformed input files, invalid options).
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;

/// Runs the command line `args` (args[0] is the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace lexglr::cli
