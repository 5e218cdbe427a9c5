#include "biv/error.hpp"

namespace biv {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::NonPositiveSqrt: return "NonPositiveSqrt";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::ZeroSigmaWithPositiveRate: return "ZeroSigmaWithPositiveRate";
        case ErrorCode::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
        case ErrorCode::InvalidQuote: return "InvalidQuote";
        case ErrorCode::InvalidLatticeSpec: return "InvalidLatticeSpec";
        case ErrorCode::InvalidInputs: return "InvalidInputs";
        case ErrorCode::PriceOutOfBand: return "PriceOutOfBand";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::MalformedHeader: return "MalformedHeader";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace biv
