#pragma once

#include <iosfwd>

namespace nfl::cli {

/// Runs the command line. Exit codes: 0 success, 1 invariant or experiment
/// failure, 2 usage, configuration or I/O error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nfl::cli
