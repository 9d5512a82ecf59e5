#pragma once

#include <iosfwd>

namespace tfdp::cli {

enum ExitCode : int {
  kOk = 0,
  kBadFlags = 1,
  kInputFailure = 2,  ///< unreadable or unparseable input, size mismatch
  kDiverged = 3,
};

/// Entry point of the `tfdp` tool with streams injected for testing.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tfdp::cli
