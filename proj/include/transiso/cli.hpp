#pragma once

#include <ostream>

namespace transiso {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUndecided = 2;  // UNKNOWN pairs or a budget event

/// Entry point of the `transiso` executable, reusable from tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace transiso
