#pragma once

#include <iosfwd>

namespace scs {

/// Exit codes of the command-line tool.
constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitProperty = 2;

/// Entry point of the `scs` tool. Reports go to --out (or `out` when no
/// path is given); diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace scs
