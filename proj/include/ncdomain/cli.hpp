#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ncdomain::cli {

enum ExitCode : int {
    kSuccess = 0,
    kNegative = 1,  // not in the domain, unequal, undefined, ...
    kUsage = 2,
    kResourceLimit = 3,
};

// Runs one command line (argv[0] is the program name) writing results to out and diagnostics
// to err; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
// As above with the arguments after the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ncdomain::cli
