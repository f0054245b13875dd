#pragma once

#include <string>
#include <vector>

namespace dunkl {

struct CheckResult {
    std::string module;
    std::string name;
    bool pass;
    std::string detail;
};

// Quick property suite covering every module (closed forms and internal
// consistency only); used by the CLI selftest command.
std::vector<CheckResult> run_selftest();

}  // namespace dunkl
