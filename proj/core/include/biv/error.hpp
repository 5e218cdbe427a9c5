#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace biv {

enum class ErrorCode {
    DivisionByZero,
    NonPositiveSqrt,
    Overflow,
    ZeroSigmaWithPositiveRate,
    ProbabilityOutOfRange,
    InvalidQuote,
    InvalidLatticeSpec,
    InvalidInputs,
    PriceOutOfBand,
    InvalidArgument,
    MalformedHeader,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-readable code. what() is "<Code>: <detail>".
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace biv
