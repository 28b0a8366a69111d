#pragma once

#include <iosfwd>

namespace fpm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitOther = 1;
inline constexpr int kExitFormat = 2;
inline constexpr int kExitNumerical = 3;

/// Parses and runs one command line. Normal output goes to `out`, diagnostics
/// to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fpm::cli
