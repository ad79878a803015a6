#pragma once

#include <iosfwd>

namespace piltz {

// Exit codes: 0 success / PASS, 1 verification FAIL, 2 usage or domain error,
// 3 verification incomplete (interrupted or undecided points).
inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIncomplete = 3;

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace piltz
