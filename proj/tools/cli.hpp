#pragma once

// Command dispatch for the unigeo tool, kept out of main() so tests can
// drive it in-process.
//
// Exit codes: 0 success, 1 usage / parse / validation error, 2 a verified
// property was violated.

#include <ostream>
#include <string>
#include <vector>

namespace unigeo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitViolation = 2;

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest decimal with 15 significant digits, independent of the locale.
std::string format_real(double x);

}  // namespace unigeo::cli
