#pragma once

#include <iosfwd>

namespace hyperfacet {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitValidation = 2;

// Runs one CLI invocation. Results go to `out`, diagnostics to `err` as a
// single JSON line {"error":{"code","message"}}.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace hyperfacet
