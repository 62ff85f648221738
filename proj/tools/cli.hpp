#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bongle::cli {

/// Runs the command line given argv-style arguments (without argv[0]).
/// Exit codes: 0 success, 1 usage error, 2 bongle parse error,
/// 3 not hyperbolic, 4 optimizer returned an upper bound only and
/// --allow-bound was not set.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bongle::cli
