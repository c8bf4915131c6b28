#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ellipsolve::cli {

enum Exit : int {
  kPass = 0,
  kFail = 2,
  kInconclusive = 3,
  kUsage = 64,
  kCondition = 65,
  kDegenerateGrid = 66,
};

// Runs one command line (without the program name). Results go to `out`
// unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ellipsolve::cli
