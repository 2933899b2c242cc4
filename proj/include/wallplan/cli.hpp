#pragma once

#include <string>
#include <vector>

namespace wallplan {

/// Runs the command-line front end. Exit codes: 0 success, 2 usage or bad
/// input values, 3 infeasible instance, 4 I/O or parse failure.
int run_cli(const std::vector<std::string>& args);

}  // namespace wallplan
