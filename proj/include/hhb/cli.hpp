#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hhb {

inline constexpr int kExitHolds = 0;
inline constexpr int kExitFails = 1;
inline constexpr int kExitHypothesisWarning = 2;
inline constexpr int kExitNotEvaluated = 3;
inline constexpr int kExitUsage = 64;

/// Runs the command line front end; args exclude the program name.
/// Commands: verify, sweep, classify, means, prop, moments.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hhb
