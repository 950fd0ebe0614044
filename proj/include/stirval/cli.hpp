#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stirval::cli {

// Process exit codes.
enum ExitStatus : int {
  kSuccess = 0,
  kUsageError = 1,         // usage, domain or I/O error
  kVerificationFailure = 2,
  kConjectureDeviation = 3,
};

struct Terminal {
  bool color = false;  // ANSI colors in plain output
};

// Runs one command. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Terminal& terminal = {});

}  // namespace stirval::cli
