#ifndef CDCR_CLI_HPP_
#define CDCR_CLI_HPP_

#include <iosfwd>

namespace cdcr::cli {

enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,
  kBadInvocation = 2,
  kInvalidConfig = 3,
  kPlanTooLarge = 4,
  kIoFailure = 5,
};

// Overrides the enumeration cap (default 8).
inline constexpr const char* kEnumerationCapEnv = "CDCR_ENUM_CAP";

inline constexpr unsigned long long kDefaultSeed = 1;

// Entry point shared by the binary and the tests. Report output goes to
// `out` unless --out names a file; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace cdcr::cli

#endif  // CDCR_CLI_HPP_
