#pragma once

#include <cmath>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "biv/lattice.hpp"

namespace biv {

/// Derivative supplied by forward-mode AD through the lattice.
struct Automatic {};
/// (f(σ+h) − f(σ−h)) / 2h.
struct CentralDifference {
    double step = 1e-6;
};
/// (f(σ+h) − f(σ)) / h.
struct ForwardDifference {
    double step = 1e-6;
};

using DerivativeMode = std::variant<Automatic, CentralDifference, ForwardDifference>;

/// Newton-Raphson settings. Defaults: x0 = 0.2, tolerance 1e-5 on successive
/// objective values, at most 100 iterations, AD derivatives, no restarts.
struct SolverConfig {
    double initial_sigma = 0.2;
    double tolerance = 1e-5;
    int max_iterations = 100;
    DerivativeMode derivative = Automatic{};
    std::vector<double> retry_initials;
    bool record_trace = false;
};

enum class SolverStatus {
    Converged,          ///< stopping rule met, residual <= 10·tol, root > 0
    ConvergedNegative,  ///< stopping rule met, residual <= 10·tol, root <= kSigmaFloor (reported as <= 0)
    MaxIterations,
    ZeroDerivative,     ///< |f'| < 1e-12 at an iterate
    PricerError,        ///< the lattice threw or produced a non-finite value
    Stalled,            ///< stopping rule met but residual > 10·tol
};

std::string_view to_string(SolverStatus status) noexcept;
std::optional<SolverStatus> parse_solver_status(std::string_view name) noexcept;

struct TracePoint {
    double sigma;
    double objective;  ///< price(σ) − C
};

struct SolverResult {
    /// The root for Converged*, otherwise the lowest-residual iterate seen.
    std::optional<double> implied_vol;
    int iterations = 0;
    SolverStatus status = SolverStatus::MaxIterations;
    /// |price(implied_vol) − C|; absent when no iterate could be priced.
    std::optional<double> final_residual;
    std::vector<TracePoint> trace;

    bool converged() const noexcept { return status == SolverStatus::Converged; }
};

/// Restart points tried by the CLI's --retries preset.
const std::vector<double>& retry_preset();

/// Threshold below which |f'| counts as zero.
inline constexpr double kZeroDerivative = 1e-12;

/// Roots in (0, kSigmaFloor] are reported as 0 with ConvergedNegative.
inline constexpr double kSigmaFloor = 1e-10;

/// Solves price_lattice(σ) = quote.market_price by Newton-Raphson. Iteration
/// stops when |f(x_n) − f(x_{n−1})| < tolerance. The lattice runs in Flag
/// mode regardless of spec.probability_policy. Never throws for a quote that
/// carries a market price; every failure is reported through the status.
SolverResult solve_implied_vol(const OptionQuote& quote, const LatticeSpec& spec, const SolverConfig& config);

/// Symmetric difference quotient of any f: double -> double.
template <typename F>
double central_difference(F&& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Central-difference dPrice/dσ of the lattice. Pricer errors propagate.
double central_difference_derivative(const OptionQuote& quote, const LatticeSpec& spec, double sigma,
                                     double h);

}  // namespace biv
