#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace renyi::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCheckFailed = 3;

/// Runs one command line (without the program name); returns the exit
/// status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace renyi::cli
