#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dunkl::cli {

enum ExitCode : int { kPass = 0, kVerdictFail = 1, kUsage = 2, kAccuracy = 3 };

// Full command line front end (args[0] is the program name); returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dunkl::cli
