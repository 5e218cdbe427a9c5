#pragma once

#include "biv/lattice.hpp"

namespace biv {

struct BsInputs {
    double spot = 0.0;
    double strike = 0.0;
    double rate = 0.0;
    double maturity = 0.0;
    double sigma = 0.0;
};

/// Standard normal CDF. Exact to double rounding via erfc; returns exactly
/// 0 or 1 for |x| > 8.
double norm_cdf(double x) noexcept;
double norm_pdf(double x) noexcept;

/// S·N(d1) − K·e^{−rT}·N(d2). Throws InvalidInputs unless S, K, T, σ > 0.
double bs_call_price(const BsInputs& in);

/// Analytic dC/dσ = S·φ(d1)·√T.
double bs_vega(const BsInputs& in);

/// Black-Scholes implied volatility of quote.market_price by Newton on the
/// analytic vega, falling back to bisection whenever a Newton step leaves the
/// current bracket. Throws PriceOutOfBand unless
/// max(0, S − K·e^{−rT}) < C < S.
double bs_implied_vol(const OptionQuote& quote);

}  // namespace biv
