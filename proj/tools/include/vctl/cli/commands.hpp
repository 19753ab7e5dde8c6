#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "vctl/cli/config.hpp"

namespace vctl::cli {

struct CommandOptions {
  /// Suites for `validate`; empty uses the config's validate block.
  std::vector<std::string> suites;
  std::ostream* log = nullptr;
};

/// Runs simulate | gradcheck | optimize | validate and returns the exit status
/// (0 success, 1 failed validation). Errors propagate as vctl::Error.
int run_command(const std::string& command, const RunConfig& config, const CommandOptions& options = {});

/// Maps an exception to the documented exit code (config 2, numerical 3, I/O 4).
int exit_code_for(const std::exception& e);

}  // namespace vctl::cli
