#pragma once

#include <iosfwd>
#include <string>

#include "coxdiv/error.hpp"
#include "coxdiv/io/config.hpp"

namespace coxdiv::cli {

enum Exit : int { ok = 0, config_error = 2, budget_exceeded = 3, internal_error = 4 };

int exit_code(ErrorCode code);

/// Reads a config file; relative matrix paths are resolved against its directory.
ConfigMap load_config_file(const std::string& path);

/**
 * Validates `config` for `command`, runs it and writes the CSV, optional
 * SVG and the manifest. Returns the process exit code; diagnostics go to
 * `err`, a short summary to `out`.
 */
int run(const std::string& command, const ConfigMap& config, std::ostream& out, std::ostream& err);

}  // namespace coxdiv::cli
