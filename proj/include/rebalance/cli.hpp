#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rebalance::cli {

/**
 * Runs one command line (without the program name).
 *
 * Returns 0 on success, including runs that only produced warnings, 2 on
 * usage errors and 1 on data or parameter errors. Warnings and error messages
 * go to `err`; help text goes to `out`.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace rebalance::cli
