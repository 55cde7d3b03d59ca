#pragma once

#include <optional>
#include <string>
#include <vector>

namespace apolar::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kCertificateFailure = 1, kInputError = 2 };

struct Output {
  /// JSON report (or help text), newline terminated.
  std::string document;
  int exit_code = kOk;
  /// Destination requested with --json; empty or "-" means stdout.
  std::string json_path;
};

/// args[0] is the command name; the rest are its flags.
Output run(const std::vector<std::string>& args);

}  // namespace apolar::cli
