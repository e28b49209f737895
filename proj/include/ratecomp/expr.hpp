#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "ratecomp/errors.hpp"

namespace ratecomp {

namespace detail {
struct expr_node;
}

/// A parsed arithmetic expression over the variables n and x1..x9.
///
/// Grammar (whitespace insignificant):
///   expr   := term (("+"|"-") term)*
///   term   := factor (("*"|"/") factor)*
///   factor := base ("^" factor)?            right-associative power
///   base   := NUMBER | IDENT | IDENT "(" expr ")" | "(" expr ")" | "-" base
///   IDENT  := "n" | "x1".."x9" | "sqrt" | "exp" | "log" | "sin" | "cos" | "abs"
///
/// Note that unary minus binds inside the power base: "-2^2" is (-2)^2 = 4.
/// "^" is real exponentiation (std::pow); "log" is the natural log.
class expression {
public:
    expression() = default;

    /// Parses `src` or throws expr_error with a 0-based byte offset.
    static expression parse(std::string_view src);

    /// Evaluates with n and x1..xd bound. Pure and deterministic; the result
    /// may be non-finite (division by zero, overflow) — callers decide.
    double eval(double n, std::span<const double> x = {}) const;

    bool uses_n() const { return uses_n_; }
    /// Highest x-variable index referenced (0 when none).
    std::size_t max_x() const { return max_x_; }

    /// When the expression is syntactically affine in x1 (and free of other
    /// variables), returns (c, b) with expr == c*x1 + b. Constant subtrees
    /// are folded; anything else yields nullopt.
    std::optional<std::pair<double, double>> linear_in_x1() const;

    const std::string& source() const { return source_; }

private:
    std::shared_ptr<const detail::expr_node> root_;
    std::string source_;
    bool uses_n_ = false;
    std::size_t max_x_ = 0;
};

} // namespace ratecomp
