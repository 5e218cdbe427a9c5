#include "biv/solver.hpp"

#include <array>
#include <utility>

namespace biv {

namespace {

constexpr std::array<std::pair<SolverStatus, std::string_view>, 6> kStatusNames{{
    {SolverStatus::Converged, "Converged"},
    {SolverStatus::ConvergedNegative, "ConvergedNegative"},
    {SolverStatus::MaxIterations, "MaxIterations"},
    {SolverStatus::ZeroDerivative, "ZeroDerivative"},
    {SolverStatus::PricerError, "PricerError"},
    {SolverStatus::Stalled, "Stalled"},
}};

// Residual allowed at a point the stopping rule accepts.
constexpr double kResidualFactor = 10.0;

struct Evaluation {
    double objective;
    double slope;
};

class Objective {
public:
    Objective(const OptionQuote& quote, const LatticeSpec& spec, const DerivativeMode& mode)
        : quote_(quote), spec_(spec), mode_(mode), target_(*quote.market_price) {
        spec_.probability_policy = ProbabilityPolicy::Flag;
    }

    // Throws biv::Error from the lattice; non-finite results are reported as
    // Overflow so the caller has a single failure path.
    Evaluation operator()(double sigma) const {
        const Evaluation e = std::visit([&](const auto& m) { return evaluate(m, sigma); }, mode_);
        if (!std::isfinite(e.objective) || !std::isfinite(e.slope)) {
            throw Error(ErrorCode::Overflow, "non-finite lattice value");
        }
        return e;
    }

private:
    double price(double sigma) const { return price_lattice(quote_, sigma, spec_).price; }

    Evaluation evaluate(const Automatic&, double sigma) const {
        const Dual p = price_lattice(quote_, Dual::variable(sigma), spec_).price;
        return {p.value() - target_, p.deriv()};
    }
    Evaluation evaluate(const CentralDifference& m, double sigma) const {
        return {price(sigma) - target_, central_difference([&](double s) { return price(s); }, sigma, m.step)};
    }
    Evaluation evaluate(const ForwardDifference& m, double sigma) const {
        const double here = price(sigma);
        return {here - target_, (price(sigma + m.step) - here) / m.step};
    }

    const OptionQuote& quote_;
    LatticeSpec spec_;
    const DerivativeMode& mode_;
    double target_;
};

SolverResult newton(const Objective& f, double x0, const SolverConfig& config) {
    SolverResult result;
    auto remember = [&](double x, double g) {
        if (config.record_trace) result.trace.push_back({x, g});
        const double r = std::abs(g);
        if (!result.final_residual || r < *result.final_residual) {
            result.final_residual = r;
            result.implied_vol = x;
        }
    };

    double x = x0;
    Evaluation current{};
    try {
        current = f(x);
    } catch (const Error&) {
        result.status = SolverStatus::PricerError;
        return result;
    }
    remember(x, current.objective);

    for (int iteration = 1; iteration <= config.max_iterations; ++iteration) {
        if (std::abs(current.slope) < kZeroDerivative) {
            result.status = SolverStatus::ZeroDerivative;
            return result;
        }
        const double next_x = x - current.objective / current.slope;
        Evaluation next{};
        try {
            next = f(next_x);
        } catch (const Error&) {
            result.status = SolverStatus::PricerError;
            return result;
        }
        result.iterations = iteration;
        remember(next_x, next.objective);

        if (std::abs(next.objective - current.objective) < config.tolerance) {
            // Report the point the rule stopped at, not the best seen.
            result.implied_vol = next_x;
            result.final_residual = std::abs(next.objective);
            if (*result.final_residual > kResidualFactor * config.tolerance) {
                result.status = SolverStatus::Stalled;
            } else if (next_x > kSigmaFloor) {
                result.status = SolverStatus::Converged;
            } else {
                if (next_x > 0.0) result.implied_vol = 0.0;
                result.status = SolverStatus::ConvergedNegative;
            }
            return result;
        }
        x = next_x;
        current = next;
    }
    result.status = SolverStatus::MaxIterations;
    return result;
}

bool better(const SolverResult& a, const SolverResult& b) {
    if (!a.final_residual) return false;
    if (!b.final_residual) return true;
    return *a.final_residual < *b.final_residual;
}

}  // namespace

std::string_view to_string(SolverStatus status) noexcept {
    for (const auto& [s, name] : kStatusNames) {
        if (s == status) return name;
    }
    return "Unknown";
}

std::optional<SolverStatus> parse_solver_status(std::string_view name) noexcept {
    for (const auto& [s, n] : kStatusNames) {
        if (n == name) return s;
    }
    return std::nullopt;
}

const std::vector<double>& retry_preset() {
    static const std::vector<double> preset{0.1, 0.4, 0.8};
    return preset;
}

SolverResult solve_implied_vol(const OptionQuote& quote, const LatticeSpec& spec, const SolverConfig& config) {
    SolverResult failed;
    failed.status = SolverStatus::PricerError;
    if (!quote.market_price) return failed;
    try {
        validate(quote);
        validate(spec);
    } catch (const Error&) {
        return failed;
    }
    if (!(config.tolerance > 0.0) || config.max_iterations < 1) {
        return failed;
    }

    const Objective objective(quote, spec, config.derivative);
    SolverResult best = newton(objective, config.initial_sigma, config);
    if (best.converged()) return best;

    for (double start : config.retry_initials) {
        SolverResult attempt = newton(objective, start, config);
        if (attempt.converged()) return attempt;
        if (better(attempt, best)) best = std::move(attempt);
    }
    return best;
}

double central_difference_derivative(const OptionQuote& quote, const LatticeSpec& spec, double sigma, double h) {
    if (!(h > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "difference step must be positive");
    }
    return central_difference([&](double s) { return price_lattice(quote, s, spec).price; }, sigma, h);
}

}  // namespace biv
