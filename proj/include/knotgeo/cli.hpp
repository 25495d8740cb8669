#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace knotgeo {

/// Command-line front end. Exit codes: 0 success, 1 usage/input error,
/// 2 registry error, 3 nonempty verification diff. All diagnostics go to
/// `err` prefixed "error:" or "warning:".
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace knotgeo
