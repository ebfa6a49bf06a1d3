#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace uset::cli {

/// Exit codes: 0 success or a true verdict, 1 a false verdict, 2 usage or
/// input error, 3 budget exhausted or failed internal cross-check.
enum ExitCode { kOk = 0, kFalse = 1, kUsage = 2, kBudget = 3 };

/// Runs one subcommand. Results go to `out` unless --out names a file;
/// diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience for tests: args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace uset::cli
