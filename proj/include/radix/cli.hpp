#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace radix::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitEval = 3;
inline constexpr int kExitUncertified = 4;

/// Runs the command line `args` (without the program name) and returns the
/// process exit code. Subcommands: eval, gaps, limit, diagnose.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace radix::cli
