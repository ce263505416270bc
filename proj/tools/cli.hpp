#pragma once

#include <iosfwd>

namespace rhofactor::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point shared by the executable and the tests. Never calls std::exit.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Oracle sweep over [1, 10^5] plus spot checks. Report is deterministic (no timings).
int selftest(std::ostream& out);

}  // namespace rhofactor::cli
