#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "biv/dual.hpp"
#include "biv/error.hpp"

namespace biv {

/// One observation of a European call: S, K, T (years), r and the observed
/// option price when there is one.
struct OptionQuote {
    double spot = 0.0;
    double strike = 0.0;
    double maturity = 0.0;
    double rate = 0.0;
    std::optional<double> market_price;
};

/// What to do when a branch probability leaves [0, 1].
enum class ProbabilityPolicy {
    Strict,  ///< throw ProbabilityOutOfRange
    Flag,    ///< price anyway and set LatticePrice::probability_out_of_range
};

struct LatticeSpec {
    int steps = 10;
    ProbabilityPolicy probability_policy = ProbabilityPolicy::Strict;
};

template <PricingScalar S>
struct LatticePrice {
    S price{};
    bool probability_out_of_range = false;
};

/// Throws InvalidQuote unless spot, strike and maturity are positive and
/// finite and any market price is non-negative.
void validate(const OptionQuote& quote);
/// Throws InvalidLatticeSpec unless steps >= 1.
void validate(const LatticeSpec& spec);

/// Call payoff max(0, S_T - K).
template <PricingScalar S>
S payoff(const S& terminal_price, double strike) {
    return max_zero(terminal_price - strike);
}

namespace detail {

template <PricingScalar S>
struct BranchProbabilities {
    S up;
    S down;
    bool out_of_range;
};

// Up/down probabilities 1/2 ± r·sqrt(dt) / (2σ).
template <PricingScalar S>
BranchProbabilities<S> branch_probabilities(const S& sigma, double rate, double sqrt_dt,
                                            ProbabilityPolicy policy) {
    S tilt{};
    if (rate != 0.0) {
        if (value_of(sigma) == 0.0) {
            throw Error(ErrorCode::ZeroSigmaWithPositiveRate,
                        "sigma = 0 with non-zero rate makes the branch probability undefined");
        }
        tilt = (rate * sqrt_dt) / (2.0 * sigma);
    }
    S up = 0.5 + tilt;
    S down = 0.5 - tilt;
    const double pd = value_of(down);
    const bool out_of_range = pd < 0.0 || pd > 1.0;
    if (out_of_range && policy == ProbabilityPolicy::Strict) {
        throw Error(ErrorCode::ProbabilityOutOfRange,
                    "branch probability outside [0, 1]; need |sigma| >= r*sqrt(dt)");
    }
    return {up, down, out_of_range};
}

}  // namespace detail

/// One-period binomial price with dt = T:
///   C = e^{-rT} (p_up·C⁺ + p_down·C⁻),  C± = max(0, S·e^{±σ√T} − K).
template <PricingScalar S>
LatticePrice<S> price_single_step(const OptionQuote& quote, const S& sigma,
                                  ProbabilityPolicy policy = ProbabilityPolicy::Strict) {
    using std::exp;
    validate(quote);
    const double sqrt_t = std::sqrt(quote.maturity);
    const double discount = std::exp(-quote.rate * quote.maturity);
    const auto prob = detail::branch_probabilities(sigma, quote.rate, sqrt_t, policy);

    const S down_value = payoff(quote.spot * exp(sigma * (-sqrt_t)), quote.strike);
    const S up_value = payoff(quote.spot * exp(sigma * sqrt_t), quote.strike);
    return {discount * (prob.up * up_value + prob.down * down_value), prob.out_of_range};
}

/// Recombining n-step lattice (u = e^{σ√dt}, d = 1/u, dt = T/n) valued by
/// backward induction. Terminal node i sits at S·e^{(2i−n)σ√dt}.
template <PricingScalar S>
LatticePrice<S> price_lattice(const OptionQuote& quote, const S& sigma, const LatticeSpec& spec) {
    using std::exp;
    validate(quote);
    validate(spec);
    const int n = spec.steps;
    const double dt = quote.maturity / n;
    const double sqrt_dt = std::sqrt(dt);
    const double discount = std::exp(-quote.rate * dt);
    const auto prob = detail::branch_probabilities(sigma, quote.rate, sqrt_dt, spec.probability_policy);

    std::vector<S> values(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        const double level = static_cast<double>(2 * i - n) * sqrt_dt;
        values[i] = payoff(quote.spot * exp(sigma * level), quote.strike);
    }
    for (int layer = n; layer > 0; --layer) {
        for (int i = 0; i < layer; ++i) {
            values[i] = discount * (prob.up * values[i + 1] + prob.down * values[i]);
        }
    }
    return {values[0], prob.out_of_range};
}

/// Convenience: price on plain doubles.
inline double lattice_price(const OptionQuote& quote, double sigma, const LatticeSpec& spec = {}) {
    return price_lattice(quote, sigma, spec).price;
}

/// Price and dPrice/dσ in one pass.
inline Dual lattice_price_and_vega(const OptionQuote& quote, double sigma,
                                   const LatticeSpec& spec = {}) {
    return price_lattice(quote, Dual::variable(sigma), spec).price;
}

}  // namespace biv
