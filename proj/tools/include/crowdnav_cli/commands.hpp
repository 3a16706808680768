#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace crowdnav::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Parses `args` (without the program name) and runs one subcommand:
/// train, eval, replay, valuemap or gen-scenario.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crowdnav::cli
