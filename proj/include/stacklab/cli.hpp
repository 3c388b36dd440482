#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stacklab::cli {

enum ExitCode : int {
  kSuccess = 0,
  kFailure = 1,  ///< validation or analysis failure
  kUsage = 2,
  kIo = 3,
};

/// Entry point for the `stacklab` tool. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace stacklab::cli
