#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace invroot::cli {

/// Entry point for the `invroot` tool: solve, verify, compare, batch, families.
///
/// Exit codes: 0 success, 2 no root / bracket failure, 3 parse error (command
/// line, expression or batch line), 4 admissibility or domain error,
/// 5 convergence failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload for tests: args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace invroot::cli
