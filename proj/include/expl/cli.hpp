#pragma once

// Command-line front end. Exit codes: 0 success, 1 usage or input error,
// 2 proof rejected or root found.

#include <iosfwd>
#include <string>
#include <vector>

namespace explainer::cli {

// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace explainer::cli
