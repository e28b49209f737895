#include "ratecomp/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ratecomp {

using nlohmann::json;

std::string to_string(bounds_mode m) {
    switch (m) {
        case bounds_mode::none: return "none";
        case bounds_mode::user_supplied: return "user-supplied";
        case bounds_mode::prop1_forward: return "prop1-forward";
        case bounds_mode::prop1_reverse: return "prop1-reverse";
        case bounds_mode::equal: return "equal";
    }
    return "?";
}

bounds_mode bounds_mode_from_string(const std::string& name) {
    if (name == "none") return bounds_mode::none;
    if (name == "user-supplied") return bounds_mode::user_supplied;
    if (name == "prop1-forward") return bounds_mode::prop1_forward;
    if (name == "prop1-reverse") return bounds_mode::prop1_reverse;
    if (name == "equal") return bounds_mode::equal;
    throw input_error("unknown bounds_mode: " + name);
}

std::int64_t horizon_of(const trace_source& s) {
    return std::visit([](const auto& v) { return v.horizon; }, s);
}

metric_kind metric_of(const trace_source& s) {
    return std::visit([](const auto& v) { return v.metric; }, s);
}

std::size_t dimension_of(const trace_source& s) {
    if (const auto* sc = std::get_if<scenario>(&s)) return sc->op.dimension;
    return std::get<formula_source>(s).dimension();
}

const point& limit_of(const trace_source& s) {
    if (const auto* sc = std::get_if<scenario>(&s)) return sc->fixed_point;
    return std::get<formula_source>(s).limit;
}

namespace {

[[noreturn]] void fail(const std::string& loc, const std::string& msg) {
    throw config_error(loc, msg);
}

const json& need(const json& j, const char* key, const std::string& loc) {
    const auto it = j.find(key);
    if (it == j.end()) fail(loc, std::string("missing key '") + key + "'");
    return *it;
}

double as_number(const json& j, const std::string& loc) {
    if (!j.is_number()) fail(loc, "expected a number");
    return j.get<double>();
}

std::string as_string(const json& j, const std::string& loc) {
    if (!j.is_string()) fail(loc, "expected a string");
    return j.get<std::string>();
}

point as_point(const json& j, const std::string& loc) {
    if (!j.is_array() || j.empty()) fail(loc, "expected a nonempty array of numbers");
    std::vector<double> coords;
    coords.reserve(j.size());
    for (const auto& v : j) coords.push_back(as_number(v, loc));
    try {
        return point(std::move(coords));
    } catch (const input_error& e) {
        fail(loc, e.what());
    }
}

std::vector<std::string> as_string_list(const json& j, const std::string& loc) {
    if (!j.is_array() || j.empty()) fail(loc, "expected a nonempty array of strings");
    std::vector<std::string> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(as_string(v, loc));
    return out;
}

expression parse_expr_at(const std::string& src, const std::string& loc) {
    try {
        return expression::parse(src);
    } catch (const expr_error& e) {
        fail(loc, "bad expression '" + src + "': " + std::string(e.what()));
    }
}

trace_source parse_side(const json& j, const std::string& loc, std::int64_t default_horizon,
                        metric_kind default_metric, double fp_tol) {
    if (!j.is_object()) fail(loc, "expected an object");
    const std::string type = as_string(need(j, "type", loc), loc + ".type");

    std::int64_t horizon = default_horizon;
    if (j.contains("horizon")) {
        horizon = j.at("horizon").is_number_integer() ? j.at("horizon").get<std::int64_t>()
                                                      : static_cast<std::int64_t>(
                                                            as_number(j.at("horizon"), loc));
    }
    if (horizon < 10) fail(loc + ".horizon", "horizon must be >= 10");
    metric_kind metric = default_metric;
    if (j.contains("metric")) {
        try {
            metric = metric_from_string(as_string(j.at("metric"), loc + ".metric"));
        } catch (const input_error& e) {
            fail(loc + ".metric", e.what());
        }
    }

    if (type == "formula") {
        const auto coords = as_string_list(need(j, "coords", loc), loc + ".coords");
        point limit = as_point(need(j, "limit", loc), loc + ".limit");
        try {
            return make_formula_source(coords, std::move(limit), horizon, metric);
        } catch (const input_error& e) {
            fail(loc, e.what());
        }
    }
    if (type != "scheme") fail(loc + ".type", "expected 'scheme' or 'formula'");

    const auto op_sources = as_string_list(need(j, "operator", loc), loc + ".operator");
    for (std::size_t i = 0; i < op_sources.size(); ++i)
        parse_expr_at(op_sources[i], loc + ".operator[" + std::to_string(i) + "]");
    operator_spec op;
    try {
        op = operator_spec::from_sources(op_sources);
    } catch (const input_error& e) {
        fail(loc + ".operator", e.what());
    }

    scheme_spec scheme;
    const std::string kind = as_string(need(j, "scheme", loc), loc + ".scheme");
    try {
        if (kind == "picard") {
            scheme = scheme_spec::picard();
        } else if (kind == "krasnoselskij") {
            scheme = scheme_spec::krasnoselskij(
                as_number(need(j, "lambda", loc), loc + ".lambda"));
        } else if (kind == "mann") {
            scheme = scheme_spec::mann(schedule_spec::from_source(
                as_string(need(j, "alpha", loc), loc + ".alpha")));
        } else if (kind == "ishikawa") {
            scheme = scheme_spec::ishikawa(
                schedule_spec::from_source(as_string(need(j, "alpha", loc), loc + ".alpha")),
                schedule_spec::from_source(as_string(need(j, "beta", loc), loc + ".beta")));
        } else {
            fail(loc + ".scheme",
                 "expected picard, krasnoselskij, mann, or ishikawa; got '" + kind + "'");
        }
    } catch (const input_error& e) {
        fail(loc + ".scheme", e.what());
    } catch (const expr_error& e) {
        fail(loc + ".scheme", e.what());
    }

    scenario sc;
    sc.op = std::move(op);
    sc.scheme = std::move(scheme);
    sc.x0 = as_point(need(j, "x0", loc), loc + ".x0");
    if (j.contains("fixed_point")) {
        sc.fixed_point = as_point(j.at("fixed_point"), loc + ".fixed_point");
    } else {
        const auto fp = closed_form_fixed_point(sc.op);
        if (!fp)
            fail(loc, "fixed_point is required (operator is not recognizably affine "
                      "with |c| < 1)");
        sc.fixed_point = *fp;
    }
    sc.horizon = horizon;
    sc.metric = metric;
    try {
        check_scenario(sc, fp_tol);
    } catch (const input_error& e) {
        fail(loc, e.what());
    }
    return sc;
}

const std::set<std::string> known_comparators = {
    "rhoades", "berinde25", "berinde27", "popescu", "zalinescu",
};

} // namespace

experiment_config parse_config_text(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(origin, std::string("not valid JSON: ") + e.what());
    }
    if (!j.is_object()) fail(origin, "top level must be an object");

    experiment_config cfg;
    cfg.schema_version = static_cast<int>(
        as_number(need(j, "schema_version", origin), origin + ".schema_version"));
    if (cfg.schema_version != config_schema_version)
        fail(origin + ".schema_version",
             "unsupported schema_version " + std::to_string(cfg.schema_version));

    cfg.name = j.contains("name") ? as_string(j.at("name"), origin + ".name") : "experiment";

    if (j.contains("fp_tol")) cfg.fp_tol = as_number(j.at("fp_tol"), origin + ".fp_tol");

    if (j.contains("estimator")) {
        const json& e = j.at("estimator");
        if (!e.is_object()) fail(origin + ".estimator", "expected an object");
        auto& est = cfg.options.estimator;
        if (e.contains("window_frac"))
            est.window_frac = as_number(e.at("window_frac"), origin + ".estimator.window_frac");
        if (e.contains("limit_tol"))
            est.limit_tol = as_number(e.at("limit_tol"), origin + ".estimator.limit_tol");
        if (e.contains("floor"))
            est.floor = as_number(e.at("floor"), origin + ".estimator.floor");
        if (e.contains("zero_tol"))
            est.zero_tol = as_number(e.at("zero_tol"), origin + ".estimator.zero_tol");
        if (!(est.window_frac > 0.0 && est.window_frac <= 1.0))
            fail(origin + ".estimator.window_frac", "must lie in (0,1]");
        if (!(est.limit_tol > 0.0))
            fail(origin + ".estimator.limit_tol", "must be > 0");
    }
    if (j.contains("require_bounds_vanish")) {
        if (!j.at("require_bounds_vanish").is_boolean())
            fail(origin + ".require_bounds_vanish", "expected a boolean");
        cfg.options.require_bounds_vanish = j.at("require_bounds_vanish").get<bool>();
    }

    std::int64_t default_horizon = 1000;
    if (j.contains("horizon")) {
        default_horizon = j.at("horizon").is_number_integer()
                              ? j.at("horizon").get<std::int64_t>()
                              : static_cast<std::int64_t>(
                                    as_number(j.at("horizon"), origin + ".horizon"));
    }
    metric_kind default_metric = metric_kind::euclidean;
    if (j.contains("metric")) {
        try {
            default_metric = metric_from_string(as_string(j.at("metric"), origin + ".metric"));
        } catch (const input_error& e) {
            fail(origin + ".metric", e.what());
        }
    }

    cfg.left = parse_side(need(j, "left", origin), origin + ".left", default_horizon,
                          default_metric, cfg.fp_tol);
    cfg.right = parse_side(need(j, "right", origin), origin + ".right", default_horizon,
                           default_metric, cfg.fp_tol);

    cfg.comparators = as_string_list(need(j, "comparators", origin), origin + ".comparators");
    for (const std::string& c : cfg.comparators)
        if (!known_comparators.contains(c))
            fail(origin + ".comparators", "unknown comparator '" + c + "'");

    if (j.contains("bounds_mode")) {
        try {
            cfg.mode = bounds_mode_from_string(
                as_string(j.at("bounds_mode"), origin + ".bounds_mode"));
        } catch (const input_error& e) {
            fail(origin + ".bounds_mode", e.what());
        }
    }
    if (j.contains("bounds_left_file"))
        cfg.bounds_left_file = as_string(j.at("bounds_left_file"), origin + ".bounds_left_file");
    if (j.contains("bounds_right_file"))
        cfg.bounds_right_file =
            as_string(j.at("bounds_right_file"), origin + ".bounds_right_file");

    const bool wants_def27 =
        std::find(cfg.comparators.begin(), cfg.comparators.end(), "berinde27") !=
        cfg.comparators.end();
    if (wants_def27) {
        if (cfg.mode == bounds_mode::none)
            fail(origin, "comparator berinde27 needs a bounds_mode "
                         "(user-supplied, prop1-forward, prop1-reverse, or equal)");
        if (cfg.mode == bounds_mode::user_supplied &&
            (!cfg.bounds_left_file || !cfg.bounds_right_file))
            fail(origin, "bounds_mode user-supplied needs bounds_left_file and "
                         "bounds_right_file");
        // Bound-mediated modes presume a shared limit.
        const point& pl = limit_of(cfg.left);
        const point& pr = limit_of(cfg.right);
        if (pl.dim() != pr.dim())
            fail(origin, "left and right limits have different dimensions");
        const double gap = distance(pl, pr, metric_of(cfg.left));
        if (!(gap <= cfg.fp_tol))
            fail(origin, "berinde27 requires a common limit: the declared limits differ by " +
                             std::to_string(gap));
    }
    if (dimension_of(cfg.left) != dimension_of(cfg.right))
        fail(origin, "left and right sides have different dimensions");

    const bool wants_def25 =
        std::find(cfg.comparators.begin(), cfg.comparators.end(), "berinde25") !=
        cfg.comparators.end();
    if (wants_def25 && dimension_of(cfg.left) != 1)
        fail(origin, "berinde25 compares real sequences; both sides must have dimension 1");

    return cfg;
}

experiment_config load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error(path, "cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

} // namespace ratecomp
