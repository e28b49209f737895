#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ratecomp/compare.hpp"
#include "ratecomp/iterate.hpp"

namespace ratecomp {

inline constexpr int config_schema_version = 1;

enum class bounds_mode {
    none,          // berinde27 not usable
    user_supplied, // bound files on disk
    prop1_forward,
    prop1_reverse,
    equal,
};

std::string to_string(bounds_mode m);
bounds_mode bounds_mode_from_string(const std::string& name);

/// One side of an experiment: either a scheme run or a formula sequence.
using trace_source = std::variant<scenario, formula_source>;

std::int64_t horizon_of(const trace_source& s);
metric_kind metric_of(const trace_source& s);
std::size_t dimension_of(const trace_source& s);
/// The claimed limit: the scenario fixed point or the formula limit.
const point& limit_of(const trace_source& s);

struct experiment_config {
    int schema_version = config_schema_version;
    std::string name;
    trace_source left;
    trace_source right;
    std::vector<std::string> comparators; // subset of the five, in run order
    bounds_mode mode = bounds_mode::none;
    std::optional<std::string> bounds_left_file;
    std::optional<std::string> bounds_right_file;
    compare_options options;
    double fp_tol = 1e-9;
};

/// Parses and validates a config file: schema, expressions, scheme
/// parameters, fixed-point residuals, comparator/bounds-mode coherence.
/// Throws config_error with the offending location.
experiment_config load_config(const std::string& path);

/// Same, from in-memory JSON text; `origin` labels error messages.
experiment_config parse_config_text(const std::string& text, const std::string& origin);

} // namespace ratecomp
