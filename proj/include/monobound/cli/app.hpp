#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace monobound::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitParseError = 1,
  kExitDomainError = 2,
  kExitInvariantViolation = 3,
};

/// Runs `monobound <command> [options]`; `args` excludes the program name.
/// Results go to `out`, diagnostics to `err`. Always returns one of the
/// ExitCode values.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace monobound::cli
