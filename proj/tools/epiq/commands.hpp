#pragma once

#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"

namespace epiq::cli {

/// Runs the configured command, writing data files and a manifest into
/// config.out_dir. Errors are reported on `err` and mapped to exit codes.
int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_config followed by dispatch.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 2 for invalid parameters, 4 for numeric failures, 3 otherwise.
int exit_code_for(const std::exception& e);

}  // namespace epiq::cli
