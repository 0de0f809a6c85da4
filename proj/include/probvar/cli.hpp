// Command-line front end: parse problem files, run computations and
// property suites, emit machine-readable JSON on stdout.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace probvar::cli {

/// Executes one subcommand. args excludes the program name. All data goes
/// to out as a single JSON document; diagnostics go to err. Returns the
/// process exit code: 0 success, 1 validation or parse error (the message
/// names the violated invariant), 2 solver non-convergence, 3 property
/// suite failure.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace probvar::cli
