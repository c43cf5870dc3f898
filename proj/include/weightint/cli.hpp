#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace weightint {

/// Parses a command line (without the program name) and runs the selected
/// subcommand: eig, evolve, integrate, average, fourier, sweep or bench.
///
/// Returns the process exit code: 0 on success, 1 on validation errors
/// (unknown/missing flags, malformed or unreadable input files, invalid
/// flag combinations), 2 on numerical errors raised while computing.
/// Results go to `out` unless --out redirects them to a file; diagnostics
/// always go to `err`.
int parse_and_dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err);

/// Same, bound to std::cout / std::cerr.
int parse_and_dispatch(std::vector<std::string> args);

} // namespace weightint
