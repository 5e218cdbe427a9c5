#include "biv/lattice.hpp"

#include <string>

namespace biv {

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void validate(const OptionQuote& quote) {
    if (!positive_finite(quote.spot)) {
        throw Error(ErrorCode::InvalidQuote, "spot must be positive, got " + std::to_string(quote.spot));
    }
    if (!positive_finite(quote.strike)) {
        throw Error(ErrorCode::InvalidQuote, "strike must be positive, got " + std::to_string(quote.strike));
    }
    if (!positive_finite(quote.maturity)) {
        throw Error(ErrorCode::InvalidQuote,
                    "maturity must be positive, got " + std::to_string(quote.maturity));
    }
    if (!std::isfinite(quote.rate)) {
        throw Error(ErrorCode::InvalidQuote, "rate must be finite");
    }
    if (quote.market_price && !(std::isfinite(*quote.market_price) && *quote.market_price >= 0.0)) {
        throw Error(ErrorCode::InvalidQuote, "market price must be non-negative");
    }
}

void validate(const LatticeSpec& spec) {
    if (spec.steps < 1) {
        throw Error(ErrorCode::InvalidLatticeSpec, "steps must be >= 1, got " + std::to_string(spec.steps));
    }
}

}  // namespace biv
