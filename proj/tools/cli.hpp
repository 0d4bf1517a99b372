#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tcurves {

// Runs the command line tool; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tcurves
