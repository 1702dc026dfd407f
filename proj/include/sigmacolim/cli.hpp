#pragma once

// Command dispatch for the sigmacolim tool.

#include <ostream>
#include <string>
#include <vector>

namespace sigmacolim {

/// Exit codes: 0 positive outcome, 1 negative mathematical outcome,
/// 2 usage or input error.
enum ExitCode { kPositive = 0, kNegative = 1, kUsage = 2 };

/// Runs one command line (without the program name). The plain-text
/// summary goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(const std::string& data);

/// Environment variable naming a directory of workspace files searched for
/// fixtures when no --workspace is given.
inline constexpr const char* kFixtureDirVar = "SIGMACOLIM_FIXTURES";

}  // namespace sigmacolim
