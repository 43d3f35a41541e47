#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace powmon::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;  // domain error, failed verification, exhausted budget
inline constexpr int kExitUsage = 2;   // unknown subcommand, bad flags, malformed literal

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace powmon::cli
