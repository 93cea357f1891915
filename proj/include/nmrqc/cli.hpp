#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nmrqc::cli {

/// Exit codes: 0 success/verified, 1 verification mismatch, 2 input error.
enum ExitCode : int { kOk = 0, kMismatch = 1, kInputError = 2 };

/// Output directory used when --out is not given.
inline constexpr const char* kOutputDirEnv = "NMRQC_OUTPUT_DIR";

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nmrqc::cli
