#pragma once

/// Command-line surface.  Exit codes: 0 success/PASS, 1 usage error,
/// 2 numerical failure or FAIL verdict.

#include <iosfwd>
#include <string>
#include <vector>

namespace huvf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

/// Runs one command.  args excludes the program name.  Reports go to out,
/// one-line diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace huvf::cli
