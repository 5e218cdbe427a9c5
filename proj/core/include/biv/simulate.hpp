#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

#include "biv/ingest.hpp"
#include "biv/lattice.hpp"

namespace biv {

/// dS = μ S dt + σ S dW sampled on a uniform grid of
/// 1 / (365 · steps_per_day) years.
struct GbmSpec {
    double initial_price = 100.0;
    double drift = 0.0;
    double volatility = 0.2;
    int horizon_days = 90;
    int steps_per_day = 1;
    std::uint64_t seed = 42;
};

struct PricePath {
    std::vector<double> times;   ///< year fractions, times[0] = 0
    std::vector<double> prices;  ///< prices[0] = initial_price
};

/// Portable standard-normal stream: std::mt19937_64 (sequence fixed by the
/// C++ standard) → u = ((x >> 11) + 0.5) · 2⁻⁵³ ∈ (0, 1) → Φ⁻¹(u).
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed);
    double next();

private:
    std::mt19937_64 engine_;
};

/// Exact lognormal stepping S_{t+δ} = S_t · exp((μ − σ²/2)δ + σ√δ·Z).
/// Throws InvalidArgument when initial_price <= 0, volatility < 0,
/// horizon_days < 1 or steps_per_day < 1.
PricePath simulate_gbm(const GbmSpec& spec);

/// 33 volatilities 0.10, 0.11, ..., 0.42.
std::vector<double> default_sigma_grid();

struct SyntheticQuote {
    OptionQuote quote;       ///< market_price = lattice price at true_sigma
    double true_sigma = 0.0;
    std::size_t path_index = 0;
};

/// One quote per (path point, strike, sigma), in that nesting order. Every
/// quote has constant time to expiry maturity_days / 365. Throws
/// InvalidArgument when maturity_days is outside [1, path horizon in days];
/// pricer errors propagate.
std::vector<SyntheticQuote> generate_synthetic_quotes(const PricePath& path, std::span<const double> strikes,
                                                      int maturity_days, std::span<const double> sigmas,
                                                      const LatticeSpec& spec, double rate);

/// Dates the synthetic quotes: quote_date = start + round(t · 365) days,
/// expiry = quote_date + maturity_days, reference_iv = true_sigma.
std::vector<QuoteRecord> to_records(std::span<const SyntheticQuote> quotes, const PricePath& path,
                                    int maturity_days, const Date& start);

/// `time_years,price` CSV.
void write_path_csv(std::ostream& out, const PricePath& path);

}  // namespace biv
