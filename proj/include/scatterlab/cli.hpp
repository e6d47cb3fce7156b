#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace scatterlab {

enum ExitCode : int { kExitOk = 0, kExitInternal = 1, kExitUsage = 2, kExitVerification = 3 };

// Raised when a verification run completes but its property does not hold.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Entry point of the scatterlab tool. args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scatterlab
