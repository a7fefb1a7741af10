#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace omqa::cli {

enum ExitCode : int {
  kYes = 0,
  kNo = 1,
  kUnknown = 2,
  kUsage = 64,
  kDataError = 65,
};

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace omqa::cli
