#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace orbi::cli {

enum ExitCode : int {
  kOk = 0,
  kDomainError = 1,
  kUsageError = 2,
  kUnexplainedErrata = 3,
};

/// Runs one orbicensus invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orbi::cli
