#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace poafd {

/// Failure categories. The CLI maps each one to a distinct exit code.
enum class ErrorCode {
    invalid_argument,
    parameter_out_of_domain,
    zero_input,
    exhausted_dictionary,
    degenerate_plan,
    ill_conditioned,
    malformed_input,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// A basis plan whose element at `index` coincides with, or lies numerically
/// in the span of, its predecessors.
class DegeneratePlanError : public Error {
public:
    DegeneratePlanError(std::size_t index, const std::string& message)
        : Error(ErrorCode::degenerate_plan, message), index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

}  // namespace poafd
