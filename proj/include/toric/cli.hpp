#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace toric::cli {

/// Exit codes: 0 success, 2 input error, 3 size cap exceeded, 4 verification failure.
enum ExitCode : int { Ok = 0, InputError = 2, CapExceeded = 3, VerificationFailure = 4 };

/// Runs one command line (without the program name); the report goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace toric::cli
