#pragma once

namespace limitfrac {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitSolver = 2,
  kExitWarning = 3,
};

/// Subcommands: run <config>, estimate <config>, refine-demo <config>, check.
int cli_main(int argc, char** argv);

}  // namespace limitfrac
