#pragma once

#include <iosfwd>

namespace zetafred::cli {

/// Exit codes of the command line tool.
enum ExitCode : int { kPass = 0, kNumericFailure = 1, kUsage = 2 };

/// Runs the tool with the given arguments, writing to out and err.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zetafred::cli
