#pragma once

/**
 * @file cli.hpp
 * @brief Command-line front end. Exit codes: 0 decided, 1 input error,
 *        2 budget exceeded (a partial report with "decided": false is printed).
 */

#include <iosfwd>
#include <string>
#include <vector>

namespace qpoly {

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qpoly
