#pragma once

// The qpent command-line tool, as a library so that tests can drive it
// in-process.

#include <complex>
#include <ostream>
#include <string>

namespace qpent::cli {

inline constexpr int kExitUsage = 64;      // malformed flags or config
inline constexpr int kExitNumerical = 65;  // NumericalError (nonconvergence, boundary leak)
inline constexpr int kExitInternal = 70;   // any other library error

/// Parses "1", "-2.5", "0.3+1.2i", "-i", "2i" and the like. Throws
/// std::invalid_argument on anything else.
std::complex<double> parse_complex(const std::string& text);

/// Runs the tool. Reports go to `out` (or to files under --output), usage
/// and error messages to `err`. Returns the process exit code: 0 when every
/// selected check passes, otherwise the 1-based position of the first
/// failing suite in the aggregation order, or one of the codes above.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qpent::cli
