#include "biv/black_scholes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace biv {

namespace {

constexpr double kCdfClamp = 8.0;
constexpr int kMaxIvIterations = 300;

struct D1D2 {
    double d1;
    double d2;
};

D1D2 d1_d2(const BsInputs& in) {
    const double vol_sqrt_t = in.sigma * std::sqrt(in.maturity);
    const double d1 = (std::log(in.spot / in.strike) + (in.rate + 0.5 * in.sigma * in.sigma) * in.maturity) /
                      vol_sqrt_t;
    return {d1, d1 - vol_sqrt_t};
}

void check(const BsInputs& in) {
    auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
    if (!positive(in.spot) || !positive(in.strike) || !positive(in.maturity) || !positive(in.sigma) ||
        !std::isfinite(in.rate)) {
        throw Error(ErrorCode::InvalidInputs, "spot, strike, maturity and sigma must be positive");
    }
}

}  // namespace

double norm_cdf(double x) noexcept {
    if (x > kCdfClamp) return 1.0;
    if (x < -kCdfClamp) return 0.0;
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double norm_pdf(double x) noexcept {
    return std::numbers::inv_sqrtpi / std::numbers::sqrt2 * std::exp(-0.5 * x * x);
}

double bs_call_price(const BsInputs& in) {
    check(in);
    const auto [d1, d2] = d1_d2(in);
    return in.spot * norm_cdf(d1) - in.strike * std::exp(-in.rate * in.maturity) * norm_cdf(d2);
}

double bs_vega(const BsInputs& in) {
    check(in);
    return in.spot * norm_pdf(d1_d2(in).d1) * std::sqrt(in.maturity);
}

double bs_implied_vol(const OptionQuote& quote) {
    validate(quote);
    if (!quote.market_price) {
        throw Error(ErrorCode::PriceOutOfBand, "quote has no market price");
    }
    const double target = *quote.market_price;
    const double floor = std::max(0.0, quote.spot - quote.strike * std::exp(-quote.rate * quote.maturity));
    if (!(target > floor && target < quote.spot)) {
        throw Error(ErrorCode::PriceOutOfBand, "price " + std::to_string(target) + " outside (" +
                                                   std::to_string(floor) + ", " + std::to_string(quote.spot) +
                                                   ")");
    }

    BsInputs in{quote.spot, quote.strike, quote.rate, quote.maturity, 1.0};
    auto objective = [&](double sigma) {
        in.sigma = sigma;
        return bs_call_price(in) - target;
    };

    // Price is strictly increasing in sigma, tending to the floor as sigma -> 0
    // and to spot as sigma -> inf, so [lo, hi] always brackets the root.
    double lo = 0.0;
    double hi = 1.0;
    while (objective(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e8) {
            throw Error(ErrorCode::PriceOutOfBand, "price indistinguishable from spot");
        }
    }

    // Brenner-Subrahmanyam starting point, clamped into the bracket.
    double x = std::sqrt(2.0 * std::numbers::pi / quote.maturity) * target / quote.spot;
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);

    for (int i = 0; i < kMaxIvIterations; ++i) {
        const double f = objective(x);
        if (f == 0.0) break;
        (f > 0.0 ? hi : lo) = x;

        in.sigma = x;
        const double vega = bs_vega(in);
        double next = vega > 0.0 ? x - f / vega : lo;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);

        const double step = std::abs(next - x);
        x = next;
        if (step <= 4.0 * std::numeric_limits<double>::epsilon() * x || hi - lo <= 1e-300) break;
    }
    return x;
}

}  // namespace biv
