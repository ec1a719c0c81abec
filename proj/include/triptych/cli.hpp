#pragma once

#include <iosfwd>

namespace triptych::cli {

/// Exit codes: 0 success or perfect verdict, 1 negative verdict, 2 usage or validation error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;

/// Machine-readable output goes to `out` (or --out), human summaries to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace triptych::cli
