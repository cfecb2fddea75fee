#pragma once

#include <string>

#include "harness/config.hpp"

namespace clockgame::cli {

struct RunResult {
  std::string csv;
  std::string svg;       // empty unless the command produces a chart
  std::string warnings;  // human-readable notes (e.g. linear regime violated)
};

// Validates the command config (ConfigError on any violation, naming the
// field) and produces the CSV/SVG artifacts. Deterministic for identical
// (config, seed) when options.reproducible suppresses the timestamp line.
RunResult run_command(const std::string& command, const Json& config,
                      const CommonOptions& options);

}  // namespace clockgame::cli
