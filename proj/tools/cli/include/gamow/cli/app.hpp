#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gamow/cli/config.hpp"
#include "gamow/cli/table.hpp"

namespace gamow::cli {

/// Stable process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,  ///< bad flags, config or preconditions
  kExitNumeric = 3,     ///< tolerance not met, fit did not converge, ...
};

Table cmd_survival(const Config& config, bool explain);
Table cmd_norm(const Config& config, bool explain);
Table cmd_fit(const Config& config, bool explain);
Table cmd_fermi(const Config& config, bool explain);
Table cmd_relativistic(const Config& config, bool explain);

/// Dispatches on the command name; throws ConfigError for an unknown one.
Table run_command(const std::string& command, const Config& config, bool explain);

/// Full command line without the program name, e.g. {"norm", "--set", "line.gamma=0.2"}.
/// Writes the table to `out`, diagnostics to `err`, and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gamow::cli
