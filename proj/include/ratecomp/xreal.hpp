#pragma once

#include <cassert>
#include <cmath>
#include <limits>

#include "ratecomp/errors.hpp"

namespace ratecomp {

/// Nonnegative extended real: a finite double or +infinity. Never NaN.
///
/// Exists to carry ratios of error sequences under the conventions
/// 0/0 := 1 and a/0 := +infinity (a > 0), so downstream limsup/liminf
/// machinery never sees an indeterminate value.
struct xreal {
    double v = 0.0;

    constexpr xreal() = default;
    constexpr explicit xreal(double value) : v(value) {}

    static constexpr xreal infinity() { return xreal(std::numeric_limits<double>::infinity()); }

    constexpr double value() const { return v; }
    constexpr bool is_infinite() const { return v == std::numeric_limits<double>::infinity(); }
    constexpr bool is_finite() const { return !is_infinite(); }

    friend constexpr bool operator==(xreal a, xreal b) { return a.v == b.v; }
    friend constexpr auto operator<=>(xreal a, xreal b) { return a.v <=> b.v; }
};

/// Ratio of two nonnegative finite reals under the sequence-comparison
/// conventions: 0/0 = 1, a/0 = +infinity for a > 0, ordinary division
/// otherwise. Total on its domain; never NaN.
inline xreal xratio(double num, double den) {
    if (!(std::isfinite(num) && std::isfinite(den)) || num < 0.0 || den < 0.0)
        throw input_error("xratio requires finite nonnegative arguments");
    if (den == 0.0)
        return num == 0.0 ? xreal(1.0) : xreal::infinity();
    return xreal(num / den);
}

/// Extended reciprocal, consistent with xratio: 1/0 = +inf, 1/inf = 0.
inline xreal xinverse(xreal r) {
    if (r.is_infinite()) return xreal(0.0);
    if (r.v == 0.0) return xreal::infinity();
    return xreal(1.0 / r.v);
}

} // namespace ratecomp
