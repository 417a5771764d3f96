#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace softedge {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitComparisonFailed = 1,
  kExitUsage = 2,
  kExitRuntime = 3,
};

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "SOFTEDGE_OUTPUT_DIR";

/**
 * Runs the `softedge` command line (args excludes the program name):
 *   simulate  Monte Carlo histogram of dos / gap / density / lambda-max
 *   exact     exact or asymptotic curves on a uniform grid
 *   compare   metrics between two curve files, thresholds decide the exit code
 *   oracle    small-N quadrature curves
 * Data goes to --output (or a generated name under $SOFTEDGE_OUTPUT_DIR, else `out`);
 * diagnostics go to `err`.
 */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace softedge
