#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace afqc::cli {

/// Exit codes.
enum Status : int {
  kOk = 0,
  kNotFound = 1,  // also: a verification failed
  kUsage = 2,
  kResource = 3,
};

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace afqc::cli
