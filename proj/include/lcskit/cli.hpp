#pragma once

namespace lcskit {

/// Parses arguments, loads and validates the run configuration, and
/// dispatches to the requested subcommand. Returns the process exit code:
/// 0 ok, 1 unexpected error, 2 config error, 3 numerical degradation,
/// 4 verification failure.
int run_cli(int argc, char** argv);

}  // namespace lcskit
