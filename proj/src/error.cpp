#include "poafd/error.hpp"

namespace poafd {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::parameter_out_of_domain: return "parameter_out_of_domain";
    case ErrorCode::zero_input: return "zero_input";
    case ErrorCode::exhausted_dictionary: return "exhausted_dictionary";
    case ErrorCode::degenerate_plan: return "degenerate_plan";
    case ErrorCode::ill_conditioned: return "ill_conditioned";
    case ErrorCode::malformed_input: return "malformed_input";
    }
    return "unknown";
}

}  // namespace poafd
