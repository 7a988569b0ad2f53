#pragma once

namespace wpmix {

// Full command-line front end: parses argv, loads the config, dispatches the
// subcommand, writes the output table, prints a one-line summary. Returns the
// process exit code: 0 success, 1 config/usage, 2 numeric failure,
// 3 inconclusive oracle.
int run_cli(int argc, const char* const* argv);

}  // namespace wpmix
