#pragma once

#include <iosfwd>
#include <stdexcept>

namespace qgrav {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitDomain = 1,      // physics/domain failure during evaluation
  kExitUsage = 2,       // bad flags or configuration
  kExitIo = 3,          // cannot read or write a file
  kExitValidation = 4,  // validate ran and at least one check failed
  kExitOracle = 5,      // oracle ran out of truncation or step budget
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Full command-line entry point; all output goes to the given streams.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qgrav
