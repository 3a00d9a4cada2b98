#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace splitcm::cli {

/// Runs the command-line front end. `args` excludes the program name.
/// Data goes to `out`; diagnostics and structured errors go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace splitcm::cli
