#pragma once

#include <cmath>
#include <concepts>
#include <ostream>

#include "biv/error.hpp"

namespace biv {

/// Forward-mode AD carrier: a value and its derivative with respect to one
/// seeded variable.
///
/// Arithmetic mixing Dual and double treats the double as a constant
/// (derivative 0). The value field of every operation is computed with the
/// same floating-point expression as the plain-double path, so a pricer
/// instantiated on Dual reproduces the double result bit-for-bit.
class Dual {
public:
    constexpr Dual() noexcept = default;
    constexpr Dual(double value, double deriv) noexcept : value_(value), deriv_(deriv) {}

    /// Independent variable: derivative 1.
    static constexpr Dual variable(double x) noexcept { return {x, 1.0}; }
    /// Constant: derivative 0.
    static constexpr Dual constant(double x) noexcept { return {x, 0.0}; }

    constexpr double value() const noexcept { return value_; }
    constexpr double deriv() const noexcept { return deriv_; }

    constexpr Dual operator-() const noexcept { return {-value_, -deriv_}; }

    friend constexpr bool operator==(const Dual&, const Dual&) = default;

private:
    double value_ = 0.0;
    double deriv_ = 0.0;
};

constexpr Dual operator+(const Dual& a, const Dual& b) noexcept {
    return {a.value() + b.value(), a.deriv() + b.deriv()};
}
constexpr Dual operator+(const Dual& a, double c) noexcept { return {a.value() + c, a.deriv()}; }
constexpr Dual operator+(double c, const Dual& a) noexcept { return {c + a.value(), a.deriv()}; }

constexpr Dual operator-(const Dual& a, const Dual& b) noexcept {
    return {a.value() - b.value(), a.deriv() - b.deriv()};
}
constexpr Dual operator-(const Dual& a, double c) noexcept { return {a.value() - c, a.deriv()}; }
constexpr Dual operator-(double c, const Dual& a) noexcept { return {c - a.value(), -a.deriv()}; }

constexpr Dual operator*(const Dual& a, const Dual& b) noexcept {
    return {a.value() * b.value(), a.deriv() * b.value() + a.value() * b.deriv()};
}
constexpr Dual operator*(const Dual& a, double c) noexcept { return {a.value() * c, a.deriv() * c}; }
constexpr Dual operator*(double c, const Dual& a) noexcept { return {c * a.value(), c * a.deriv()}; }

inline Dual operator/(const Dual& a, const Dual& b) {
    if (b.value() == 0.0) {
        throw Error(ErrorCode::DivisionByZero, "dual division by a zero value");
    }
    const double q = a.value() / b.value();
    return {q, (a.deriv() - q * b.deriv()) / b.value()};
}
inline Dual operator/(const Dual& a, double c) {
    if (c == 0.0) {
        throw Error(ErrorCode::DivisionByZero, "dual division by zero constant");
    }
    return {a.value() / c, a.deriv() / c};
}
inline Dual operator/(double c, const Dual& b) {
    if (b.value() == 0.0) {
        throw Error(ErrorCode::DivisionByZero, "division of a constant by a zero dual value");
    }
    const double q = c / b.value();
    return {q, -q * b.deriv() / b.value()};
}

inline Dual exp(const Dual& a) {
    const double e = std::exp(a.value());
    if (!std::isfinite(e)) {
        throw Error(ErrorCode::Overflow, "exp overflow");
    }
    return {e, e * a.deriv()};
}

inline Dual sqrt(const Dual& a) {
    if (!(a.value() > 0.0)) {
        throw Error(ErrorCode::NonPositiveSqrt, "sqrt of a non-positive dual value");
    }
    const double r = std::sqrt(a.value());
    return {r, a.deriv() / (2.0 * r)};
}

/// max(0, a). At exactly 0 the derivative is taken as 0.
constexpr Dual max_zero(const Dual& a) noexcept {
    return a.value() > 0.0 ? a : Dual{0.0, 0.0};
}

constexpr double value_of(const Dual& a) noexcept { return a.value(); }

inline std::ostream& operator<<(std::ostream& os, const Dual& a) {
    return os << '(' << a.value() << ", " << a.deriv() << ')';
}

// Plain-double counterparts so pricing code can be written once.
constexpr double max_zero(double x) noexcept { return x > 0.0 ? x : 0.0; }
constexpr double value_of(double x) noexcept { return x; }

/// Number-like types the pricers are generic over: double and Dual.
template <typename T>
concept PricingScalar = requires(const T& a, const T& b, double c) {
    { a + b } -> std::convertible_to<T>;
    { a - b } -> std::convertible_to<T>;
    { a * b } -> std::convertible_to<T>;
    { a / b } -> std::convertible_to<T>;
    { c * a } -> std::convertible_to<T>;
    { a - c } -> std::convertible_to<T>;
    { c / a } -> std::convertible_to<T>;
    { max_zero(a) } -> std::convertible_to<T>;
    { value_of(a) } -> std::convertible_to<double>;
};

}  // namespace biv
