#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace darwin::cli {

inline constexpr std::string_view kVersion = "0.1.0";

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kRuntimeFailure = 1,
  kConfigError = 2,
  kCapViolation = 3,
};

/// Runs `darwin <args...>` (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace darwin::cli
