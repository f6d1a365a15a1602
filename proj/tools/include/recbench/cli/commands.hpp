#pragma once

#include <iosfwd>

namespace recbench::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitLeakage = 3;
inline constexpr int kExitModelFailure = 4;

/// Entry point of the `recbench` tool:
///
///   recbench prepare|audit|tune|eval|bench [--config PATH] [--seed N]
///            [--out DIR] [--threads N] [--set key=value]...
///
/// Status and reports go to `out`, diagnostics to `err`. Returns the process
/// exit code (0 ok, 2 usage/input error, 3 leakage found, 4 model or
/// resource failure).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace recbench::cli
