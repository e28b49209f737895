#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ratecomp/expr.hpp"
#include "ratecomp/metric.hpp"

namespace ratecomp {

/// A self-map of R^d given by one expression per coordinate over x1..xd.
struct operator_spec {
    std::size_t dimension = 1;
    std::vector<expression> exprs;

    /// Parses and validates: each expression may reference x1..xd only.
    static operator_spec from_sources(const std::vector<std::string>& sources);
};

/// Writes T(in) into out; returns the 0-based coordinate of the first
/// non-finite result, or -1 on success.
int apply_operator_into(const operator_spec& op, std::span<const double> in,
                        std::span<double> out);

/// T(p). Throws input_error on dimension mismatch or a non-finite coordinate.
point apply_operator(const operator_spec& op, const point& p);

/// When the operator is 1-dimensional and syntactically affine, T x = c*x + b
/// with |c| < 1, returns the fixed point b/(1-c); nullopt otherwise.
std::optional<point> closed_form_fixed_point(const operator_spec& op);

/// A coefficient sequence: an expression over the iteration index n,
/// range-checked into [0,1] during generation.
struct schedule_spec {
    expression expr;

    static schedule_spec from_source(const std::string& source);
    double at(std::int64_t n) const { return expr.eval(static_cast<double>(n)); }
};

enum class scheme_kind { picard, krasnoselskij, mann, ishikawa };

std::string to_string(scheme_kind k);

struct scheme_spec {
    scheme_kind kind = scheme_kind::picard;
    double lambda = 0.0;                 // krasnoselskij, in (0,1)
    std::optional<schedule_spec> alpha;  // mann, ishikawa
    std::optional<schedule_spec> beta;   // ishikawa

    static scheme_spec picard();
    static scheme_spec krasnoselskij(double lambda);
    static scheme_spec mann(schedule_spec alpha);
    static scheme_spec ishikawa(schedule_spec alpha, schedule_spec beta);
};

/// One iteration experiment: operator, scheme, start point, the claimed
/// fixed point, horizon, and the metric used for error traces.
struct scenario {
    operator_spec op;
    scheme_spec scheme;
    point x0;
    point fixed_point;
    std::int64_t horizon = 1;
    metric_kind metric = metric_kind::euclidean;
};

/// Dimension checks plus the fixed-point residual d(T(p*), p*) <= fp_tol.
void check_scenario(const scenario& s, double fp_tol = 1e-9);

/// Runs the scheme. The trace has horizon+1 points, starts at index 1, and
/// its first point is x0 itself:
///   picard:        x_{n+1} = T(x_n)
///   krasnoselskij: x_{n+1} = (1-lambda) x_n + lambda T(x_n)
///   mann:          x_{n+1} = (1-alpha_n) x_n + alpha_n T(x_n)
///   ishikawa:      y_n = (1-beta_n) x_n + beta_n T(x_n),
///                  x_{n+1} = (1-alpha_n) x_n + alpha_n T(y_n)
/// Deterministic. Throws generation_error naming n when a schedule leaves
/// [0,1] or an operator evaluation goes non-finite.
trace generate(const scenario& s);

/// A sequence given directly by coordinate formulas in n, with a declared
/// limit. Produces the same trace shape as generate(): indices 1..horizon+1.
struct formula_source {
    std::vector<expression> coord_exprs;
    point limit;
    std::int64_t horizon = 1;
    metric_kind metric = metric_kind::euclidean;

    std::size_t dimension() const { return coord_exprs.size(); }
};

formula_source make_formula_source(const std::vector<std::string>& coord_sources,
                                   point limit, std::int64_t horizon, metric_kind metric);

trace generate(const formula_source& f);

} // namespace ratecomp
