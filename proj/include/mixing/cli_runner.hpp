#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mixing::cli {

enum ExitCode : int {
  kSuccess = 0,
  kAssertionFailed = 1,  ///< a checked bound or invariant was violated
  kUsageError = 2,       ///< bad flags, bad parameters, unmet hypotheses
  kCapExceeded = 3,      ///< state space larger than the enumeration cap
};

inline constexpr int kFormatVersion = 1;

/// Directory for artifacts when --out is not given.
inline constexpr const char* kOutDirVariable = "MIXING_OUT_DIR";

/// `args` excludes the program name. JSON goes to --out, to
/// $MIXING_OUT_DIR/<subcommand>.json, or to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace mixing::cli
