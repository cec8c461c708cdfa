#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace acihs::cli {

enum Exit : int {
  kPass = 0,
  kInvariantFailed = 1,
  kConfigError = 2,
  kNumericalError = 3,
};

/// The `acihs` tool. args[0] is the program name. Records and the final
/// summary go to --out when given, else to `out`; diagnostics go to `err`.
/// Nothing is written to --out unless the configuration validated.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace acihs::cli
