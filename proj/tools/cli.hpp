#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace gaflab {

/// key=value lines; blank lines and lines starting with '#' are skipped.
/// Throws gaf::ConfigError on a line without '=' or with an empty key.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

/// Runs one subcommand. Returns 0 on success, 2 on a configuration error and 3 on a
/// numerical failure, whose operation is named on `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gaflab
