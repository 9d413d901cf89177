#pragma once

// Command-line front end. run() is the whole program minus process setup, so
// tests can drive it in-process.

#include <iosfwd>
#include <string>
#include <vector>

namespace poafd::cli {

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kUsage = 2,
    kMalformedInput = 3,
    kOutOfDomain = 4,
    kInvalidArgument = 5,
    kExhaustedDictionary = 6,
    kDegeneratePlan = 7,
    kIllConditioned = 8,
    kZeroInput = 9,
    kVerifyFailed = 10,
};

/// `args` excludes the program name. Results go to --output (or `out`),
/// diagnostics and error JSON to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace poafd::cli
