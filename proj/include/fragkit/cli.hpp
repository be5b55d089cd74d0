#pragma once

#include <iosfwd>

namespace fragkit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNotConverged = 1;
inline constexpr int kExitInputError = 2;

/// Entry point for the fragkit command line. Writes documents to out (or the
/// --output file) and diagnostics to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fragkit
