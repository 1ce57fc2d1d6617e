#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace noether {

/// Process exit codes of noether-kit.
enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  kExitNotInvariant = 2,
  kExitExpectationMismatch = 3,
};

/// Entry point behind the noether-kit binary. `args` excludes the program name.
///
///   noether-kit invariance <file> [flags]
///   noether-kit noether <file> [--classical] [flags]
///   noether-kit classify <file> <trajectory> [--json <path>] [flags]
///   noether-kit demo [--filter <name>] [--corpus <dir>] [flags]
///
/// Shared flags: --tol --seed --samples --probe-bound --json.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace noether
