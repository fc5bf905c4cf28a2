#pragma once

#include <string>

#include "quench/run_config.hpp"

namespace quench {

// Validates the config, executes the requested mode, and returns the
// finished document (CSV or JSON per config.format). Errors surface as the
// library exception types; the command-line wrapper maps them to exit codes.
std::string run(const RunConfig& c);

}  // namespace quench
