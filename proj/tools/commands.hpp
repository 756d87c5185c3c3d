#pragma once

// The cyclo command line, callable in-process. Exit codes: 0 every check
// passed, 1 a check failed, 2 bad input, 3 numeric precision failure.

#include <string>
#include <vector>

namespace cyclo::cli {

enum Exit : int { kPass = 0, kCheckFailed = 1, kInputError = 2, kPrecisionFailure = 3 };

struct Result {
    int code = kPass;
    std::string out;
    std::string err;
};

// args excludes the program name.
Result run(const std::vector<std::string>& args);

} // namespace cyclo::cli
