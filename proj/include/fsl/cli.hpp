#pragma once

#include <iosfwd>

namespace fsl::cli {

/// Exit codes.
enum Exit : int {
  ok = 0,
  verification_failed = 1,
  input_error = 2,       // malformed input or schema violation
  precondition = 3,      // mathematical precondition violated
  structural = 4,        // flatness, orientation, pseudomanifold
};

/// Runs the `fsl` command line. Results go to `out`; errors are one line on `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fsl::cli
