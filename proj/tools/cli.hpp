#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mtfp::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,      ///< bad arguments, unreadable or malformed file
    kValidation = 2, ///< instance violates an invariant
    kBudget = 3,     ///< exhaustive search refused by the evaluation budget
    kInfeasible = 4, ///< solve finished but its best allocation breaks the requirements
};

/// Runs one command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace mtfp::cli
