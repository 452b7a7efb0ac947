#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ctphs::cli {

/// Process exit codes.
enum Exit : int {
  kOk = 0,
  kFailure = 1,
  kInvalidConfig = 2,
  kNotConverged = 3,
  kBudgetExceeded = 4,
};

/// Runs one command (`args[0]` is the subcommand). Artifacts go to --out or
/// to `out`; machine-readable errors go to `err` as one JSON line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ctphs::cli
