#pragma once

// Randomized agreement checks between the primary modules and the oracles.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "poafd/sampling.hpp"

namespace poafd {

struct CheckResult {
    std::string name;
    std::size_t trials = 0;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct VerificationReport {
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;

    bool passed() const;
};

VerificationReport run_verification(std::uint64_t seed = sampling::kDefaultSeed, std::size_t trials = 100);

}  // namespace poafd
