#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cartan::cli {

/// Exit codes: 0 success, 1 domain or usage error (error JSON on `err`),
/// 2 verification failure.
enum ExitCode : int { kOk = 0, kDomainError = 1, kVerifyFailed = 2 };

/// Runs one command line (without the program name). Input JSON is read
/// from --in or `in`; output goes to --out or `out`.
int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace cartan::cli
