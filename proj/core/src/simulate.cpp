#include "biv/simulate.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include <boost/math/distributions/normal.hpp>

namespace biv {

NormalStream::NormalStream(std::uint64_t seed) : engine_(seed) {}

double NormalStream::next() {
    constexpr double kTwoPow53 = 9007199254740992.0;
    const double u = (static_cast<double>(engine_() >> 11) + 0.5) / kTwoPow53;
    static const boost::math::normal_distribution<double> standard;
    return boost::math::quantile(standard, u);
}

PricePath simulate_gbm(const GbmSpec& spec) {
    if (!(spec.initial_price > 0.0) || !std::isfinite(spec.initial_price)) {
        throw Error(ErrorCode::InvalidArgument, "initial_price must be positive");
    }
    if (!(spec.volatility >= 0.0) || !std::isfinite(spec.volatility) || !std::isfinite(spec.drift)) {
        throw Error(ErrorCode::InvalidArgument, "volatility must be non-negative and drift finite");
    }
    if (spec.horizon_days < 1 || spec.steps_per_day < 1) {
        throw Error(ErrorCode::InvalidArgument, "horizon_days and steps_per_day must be >= 1");
    }

    const std::size_t steps = static_cast<std::size_t>(spec.horizon_days) * spec.steps_per_day;
    const double delta = 1.0 / (kDaysPerYear * spec.steps_per_day);
    const double drift_step = (spec.drift - 0.5 * spec.volatility * spec.volatility) * delta;
    const double vol_step = spec.volatility * std::sqrt(delta);

    PricePath path;
    path.times.reserve(steps + 1);
    path.prices.reserve(steps + 1);
    path.times.push_back(0.0);
    path.prices.push_back(spec.initial_price);

    NormalStream normals(spec.seed);
    double price = spec.initial_price;
    for (std::size_t k = 1; k <= steps; ++k) {
        price *= std::exp(drift_step + vol_step * normals.next());
        path.times.push_back(static_cast<double>(k) * delta);
        path.prices.push_back(price);
    }
    return path;
}

std::vector<double> default_sigma_grid() {
    std::vector<double> grid;
    grid.reserve(33);
    for (int i = 10; i <= 42; ++i) grid.push_back(i / 100.0);
    return grid;
}

std::vector<SyntheticQuote> generate_synthetic_quotes(const PricePath& path, std::span<const double> strikes,
                                                      int maturity_days, std::span<const double> sigmas,
                                                      const LatticeSpec& spec, double rate) {
    const double horizon_days = path.times.empty() ? 0.0 : path.times.back() * kDaysPerYear;
    if (maturity_days < 1 || maturity_days > std::lround(horizon_days)) {
        throw Error(ErrorCode::InvalidArgument,
                    "maturity_days must lie in [1, " + std::to_string(std::lround(horizon_days)) + "]");
    }
    const double maturity = maturity_days / kDaysPerYear;

    std::vector<SyntheticQuote> out;
    out.reserve(path.prices.size() * strikes.size() * sigmas.size());
    for (std::size_t p = 0; p < path.prices.size(); ++p) {
        for (double strike : strikes) {
            for (double sigma : sigmas) {
                OptionQuote q{path.prices[p], strike, maturity, rate, std::nullopt};
                q.market_price = lattice_price(q, sigma, spec);
                out.push_back({q, sigma, p});
            }
        }
    }
    return out;
}

std::vector<QuoteRecord> to_records(std::span<const SyntheticQuote> quotes, const PricePath& path,
                                    int maturity_days, const Date& start) {
    std::vector<QuoteRecord> records;
    records.reserve(quotes.size());
    for (const auto& sq : quotes) {
        const auto day = std::lround(path.times.at(sq.path_index) * kDaysPerYear);
        const auto quote_day = std::chrono::sys_days{start} + std::chrono::days{day};
        QuoteRecord r;
        r.quote_date = Date{quote_day};
        r.expiry_date = Date{quote_day + std::chrono::days{maturity_days}};
        r.spot = sq.quote.spot;
        r.strike = sq.quote.strike;
        r.option_price = sq.quote.market_price.value_or(0.0);
        r.rate = sq.quote.rate;
        r.reference_iv = sq.true_sigma;
        records.push_back(r);
    }
    return records;
}

void write_path_csv(std::ostream& out, const PricePath& path) {
    out << "time_years,price\n";
    for (std::size_t i = 0; i < path.times.size(); ++i) {
        out << format_number(path.times[i]) << ',' << format_number(path.prices[i]) << '\n';
    }
}

}  // namespace biv
