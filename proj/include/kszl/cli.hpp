#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kszl::cli {

inline constexpr const char* kReportSchema = "kszl-report/1";
inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kVerdictFalse = 1, kInputError = 2, kBudgetError = 3 };

/// Result of one command: exit code, JSON report (serialized), text rendering
/// and diagnostics destined for the error stream.
struct Outcome {
    int exit_code = kOk;
    std::string report_json;
    std::string text;
    std::string diagnostics;
};

/// Runs one command line (without the program name).
Outcome execute(const std::vector<std::string>& args);

/// Runs a command line and writes the report (JSON with --json, text
/// otherwise) to `out` and diagnostics to `err`.  Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a, as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

}  // namespace kszl::cli
