#pragma once
// Command-line surface. Subcommands:
//   gen       build a scenario (bundled or from a config file), write its
//             config and simulated trajectory
//   simulate  config file -> trajectory CSV
//   analyze   trajectory CSV -> indicator CSV + depth summary CSV
//   horizon   indicator or summary CSV -> tiered depth recommendation
//   report    the full chain plus peak/oscillation/classification reports
//
// Exit codes: 0 success, 1 usage error, 2 input/format error, 3 numeric
// error (singular system, every analysis window degenerate). Diagnostics go
// to the error stream; data only to files or standard output.

#include <string>
#include <vector>

namespace horizonkit {

// Runs the CLI on the given arguments (excluding the program name).
int run_cli(const std::vector<std::string>& args);

// Environment variable consulted for the seed when --seed is absent.
inline constexpr const char* kSeedEnvVar = "HORIZONKIT_SEED";

}  // namespace horizonkit
