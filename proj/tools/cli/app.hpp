#pragma once

#include <iosfwd>

namespace dwring::cli {

enum ExitCode : int { ok = 0, config_error = 2, numeric_error = 3, io_error = 4 };

/// Parses the command line, runs the command and writes the result to the
/// configured output (or `out`). Diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dwring::cli
