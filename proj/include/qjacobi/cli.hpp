#pragma once

#include <iosfwd>

namespace qjacobi::cli {

enum ExitCode : int {
    kOk = 0,
    kInputError = 2,
    kNotConverged = 3,
    kMismatch = 4,
};

/// Entry point of the `qsvd` tool; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace qjacobi::cli
