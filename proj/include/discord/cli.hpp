#pragma once

#include <exception>
#include <iosfwd>

namespace discord::cli {

enum ExitCode : int {
  kSuccess = 0,
  kFailure = 1,
  kInvalidConfig = 2,
  kDegenerateLocalState = 3,
  kNotConverged = 4,
};

/// Exit code for an exception escaping a subcommand.
ExitCode exit_code_for(const std::exception& e) noexcept;

/// Parses argv and runs one subcommand. CSV goes to --output (stdout when the
/// path is "-" or absent); diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace discord::cli
