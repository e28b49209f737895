#include "ratecomp/iterate.hpp"

#include <cmath>

namespace ratecomp {

operator_spec operator_spec::from_sources(const std::vector<std::string>& sources) {
    if (sources.empty())
        throw input_error("operator needs at least one coordinate expression");
    operator_spec op;
    op.dimension = sources.size();
    op.exprs.reserve(sources.size());
    for (const std::string& src : sources) {
        expression e = expression::parse(src);
        if (e.uses_n())
            throw input_error("operator expression '" + src +
                              "' references n; operators range over x1..xd only");
        if (e.max_x() > op.dimension)
            throw input_error("operator expression '" + src + "' references x" +
                              std::to_string(e.max_x()) + " beyond dimension " +
                              std::to_string(op.dimension));
        op.exprs.push_back(std::move(e));
    }
    return op;
}

int apply_operator_into(const operator_spec& op, std::span<const double> in,
                        std::span<double> out) {
    for (std::size_t i = 0; i < op.dimension; ++i) {
        const double v = op.exprs[i].eval(0.0, in);
        if (!std::isfinite(v)) return static_cast<int>(i);
        out[i] = v;
    }
    return -1;
}

point apply_operator(const operator_spec& op, const point& p) {
    if (p.dim() != op.dimension)
        throw input_error("apply_operator: point dimension does not match operator");
    std::vector<double> out(op.dimension);
    const int bad = apply_operator_into(op, p.coords, out);
    if (bad >= 0)
        throw input_error("operator coordinate " + std::to_string(bad + 1) +
                          " evaluated to a non-finite value");
    return point(std::move(out));
}

std::optional<point> closed_form_fixed_point(const operator_spec& op) {
    if (op.dimension != 1) return std::nullopt;
    const auto form = op.exprs[0].linear_in_x1();
    if (!form) return std::nullopt;
    const auto [c, b] = *form;
    if (!(std::fabs(c) < 1.0)) return std::nullopt;
    return point({b / (1.0 - c)});
}

schedule_spec schedule_spec::from_source(const std::string& source) {
    expression e = expression::parse(source);
    if (e.max_x() != 0)
        throw input_error("schedule expression '" + source +
                          "' references iterate coordinates; schedules range over n only");
    return schedule_spec{std::move(e)};
}

std::string to_string(scheme_kind k) {
    switch (k) {
        case scheme_kind::picard: return "picard";
        case scheme_kind::krasnoselskij: return "krasnoselskij";
        case scheme_kind::mann: return "mann";
        case scheme_kind::ishikawa: return "ishikawa";
    }
    return "?";
}

scheme_spec scheme_spec::picard() { return scheme_spec{}; }

scheme_spec scheme_spec::krasnoselskij(double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw input_error("krasnoselskij lambda must lie strictly inside (0,1)");
    scheme_spec s;
    s.kind = scheme_kind::krasnoselskij;
    s.lambda = lambda;
    return s;
}

scheme_spec scheme_spec::mann(schedule_spec alpha) {
    scheme_spec s;
    s.kind = scheme_kind::mann;
    s.alpha = std::move(alpha);
    return s;
}

scheme_spec scheme_spec::ishikawa(schedule_spec alpha, schedule_spec beta) {
    scheme_spec s;
    s.kind = scheme_kind::ishikawa;
    s.alpha = std::move(alpha);
    s.beta = std::move(beta);
    return s;
}

void check_scenario(const scenario& s, double fp_tol) {
    if (s.x0.dim() != s.op.dimension)
        throw input_error("scenario: x0 dimension does not match operator");
    if (s.fixed_point.dim() != s.op.dimension)
        throw input_error("scenario: fixed_point dimension does not match operator");
    if (s.horizon < 1)
        throw input_error("scenario: horizon must be >= 1");
    if (s.metric == metric_kind::absolute && s.op.dimension != 1)
        throw input_error("absolute metric is defined for dimension 1 only");
    const point image = apply_operator(s.op, s.fixed_point);
    const double residual = distance(image, s.fixed_point, s.metric);
    if (!(residual <= fp_tol))
        throw input_error("scenario: fixed-point residual " + std::to_string(residual) +
                          " exceeds fp_tol " + std::to_string(fp_tol));
}

namespace {

// (1-w)*x + w*tx, coordinatewise. All schemes share this step so that
// coincidences like mann(const a) == krasnoselskij(a) hold bit for bit.
void affine_combine(std::span<const double> x, std::span<const double> tx, double w,
                    std::span<double> out) {
    const double cw = 1.0 - w;
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = cw * x[i] + w * tx[i];
}

double checked_weight(const schedule_spec& sched, std::int64_t n, const char* name) {
    const double w = sched.at(n);
    if (!(w >= 0.0 && w <= 1.0))
        throw generation_error(n, std::string(name) + " schedule value " + std::to_string(w) +
                                      " is outside [0,1]");
    return w;
}

} // namespace

trace generate(const scenario& s) {
    const std::size_t dim = s.op.dimension;
    if (s.x0.dim() != dim)
        throw input_error("generate: x0 dimension does not match operator");
    if (s.horizon < 1)
        throw input_error("generate: horizon must be >= 1");

    const std::size_t steps = static_cast<std::size_t>(s.horizon);
    std::vector<double> data;
    data.reserve((steps + 1) * dim);
    data.insert(data.end(), s.x0.coords.begin(), s.x0.coords.end());

    std::vector<double> tx(dim), y(dim), ty(dim), next(dim);
    for (std::size_t k = 0; k < steps; ++k) {
        const std::int64_t n = static_cast<std::int64_t>(k) + 1;
        const std::span<const double> x(data.data() + k * dim, dim);

        int bad = apply_operator_into(s.op, x, tx);
        if (bad >= 0)
            throw generation_error(n, "operator coordinate " + std::to_string(bad + 1) +
                                          " evaluated to a non-finite value");

        switch (s.scheme.kind) {
            case scheme_kind::picard:
                std::copy(tx.begin(), tx.end(), next.begin());
                break;
            case scheme_kind::krasnoselskij:
                affine_combine(x, tx, s.scheme.lambda, next);
                break;
            case scheme_kind::mann: {
                const double a = checked_weight(*s.scheme.alpha, n, "mann alpha");
                affine_combine(x, tx, a, next);
                break;
            }
            case scheme_kind::ishikawa: {
                const double a = checked_weight(*s.scheme.alpha, n, "ishikawa alpha");
                const double b = checked_weight(*s.scheme.beta, n, "ishikawa beta");
                affine_combine(x, tx, b, y);
                bad = apply_operator_into(s.op, y, ty);
                if (bad >= 0)
                    throw generation_error(
                        n, "operator coordinate " + std::to_string(bad + 1) +
                               " evaluated to a non-finite value at the inner step");
                affine_combine(x, ty, a, next);
                break;
            }
        }
        for (double v : next)
            if (!std::isfinite(v))
                throw generation_error(n, "iterate went non-finite");
        data.insert(data.end(), next.begin(), next.end());
    }
    return trace(1, dim, std::move(data));
}

formula_source make_formula_source(const std::vector<std::string>& coord_sources,
                                   point limit, std::int64_t horizon, metric_kind metric) {
    if (coord_sources.empty())
        throw input_error("formula source needs at least one coordinate expression");
    if (limit.dim() != coord_sources.size())
        throw input_error("formula source: limit dimension does not match coordinates");
    if (horizon < 1)
        throw input_error("formula source: horizon must be >= 1");
    formula_source f;
    f.coord_exprs.reserve(coord_sources.size());
    for (const std::string& src : coord_sources) {
        expression e = expression::parse(src);
        if (e.max_x() != 0)
            throw input_error("formula expression '" + src +
                              "' references iterate coordinates; formulas range over n only");
        f.coord_exprs.push_back(std::move(e));
    }
    f.limit = std::move(limit);
    f.horizon = horizon;
    f.metric = metric;
    return f;
}

trace generate(const formula_source& f) {
    const std::size_t dim = f.dimension();
    const std::size_t count = static_cast<std::size_t>(f.horizon) + 1;
    std::vector<double> data;
    data.reserve(count * dim);
    for (std::size_t k = 0; k < count; ++k) {
        const std::int64_t n = static_cast<std::int64_t>(k) + 1;
        for (std::size_t i = 0; i < dim; ++i) {
            const double v = f.coord_exprs[i].eval(static_cast<double>(n));
            if (!std::isfinite(v))
                throw generation_error(n, "formula coordinate " + std::to_string(i + 1) +
                                              " evaluated to a non-finite value");
            data.push_back(v);
        }
    }
    return trace(1, dim, std::move(data));
}

} // namespace ratecomp
