// Writes a deterministic 200-row market-like quote file to stdout: calls
// priced by Black-Scholes, rounded to cents, with the Black-Scholes implied
// volatility of the rounded price as reference_iv.

#include <chrono>
#include <cmath>
#include <iostream>
#include <random>
#include <vector>

#include "biv/biv.hpp"

int main() {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> spot(50, 300), moneyness(0.8, 1.2), vol(0.15, 0.6), rate(0, 0.04);
    std::uniform_int_distribution<int> offset(0, 700), tenor(30, 365);

    const auto origin = std::chrono::sys_days{std::chrono::year{2019} / 1 / 2};
    std::vector<biv::QuoteRecord> records;
    while (records.size() < 200) {
        biv::QuoteRecord r;
        const auto quote_day = origin + std::chrono::days{offset(rng)};
        const int days = tenor(rng);
        r.quote_date = biv::Date{quote_day};
        r.expiry_date = biv::Date{quote_day + std::chrono::days{days}};
        r.spot = std::round(spot(rng) * 100) / 100;
        r.strike = std::round(r.spot * moneyness(rng) / 5) * 5;
        r.rate = std::round(rate(rng) * 1e4) / 1e4;
        const double sigma = vol(rng);
        const double t = days / static_cast<double>(biv::kDaysPerYear);
        r.option_price = std::round(biv::bs_call_price({r.spot, r.strike, r.rate, t, sigma}) * 100) / 100;
        if (r.option_price < 0.05) continue;
        try {
            r.reference_iv = biv::bs_implied_vol(biv::to_quote(r));
        } catch (const biv::Error&) {
            continue;  // rounding pushed the price onto the intrinsic bound
        }
        records.push_back(r);
    }
    biv::write_quotes_csv(std::cout, records);
}
