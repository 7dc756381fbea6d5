#pragma once

#include <ostream>

namespace mixedform::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInvariant = 3;
inline constexpr int kExitUsage = 64;

/// Parses argv, runs one subcommand and writes its report to `out`
/// (diagnostics to `err`). Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mixedform::cli
