#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qtorus::cli {

enum ExitCode : int {
    kOk = 0,
    kVerificationFailed = 1,
    kParseError = 2,
    kPrecondition = 3,
};

/// Runs one subcommand. args excludes the program name. Input is read from
/// the file named by the positional argument, or from `in` when absent/"-".
int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace qtorus::cli
