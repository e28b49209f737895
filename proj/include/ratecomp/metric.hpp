#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ratecomp/xreal.hpp"

namespace ratecomp {

/// A point of R^d. Coordinates are finite; dimension >= 1.
struct point {
    std::vector<double> coords;

    point() = default;
    explicit point(std::vector<double> c);
    point(std::initializer_list<double> c) : point(std::vector<double>(c)) {}

    std::size_t dim() const { return coords.size(); }
    double operator[](std::size_t i) const { return coords[i]; }

    friend bool operator==(const point& a, const point& b) { return a.coords == b.coords; }
};

enum class metric_kind {
    euclidean,
    chebyshev,
    absolute, // dimension-1 alias, |p - q|
};

std::string to_string(metric_kind m);
metric_kind metric_from_string(const std::string& name);

/// d(p, q) on raw coordinate spans. Used by the kernels layer.
double distance(std::span<const double> p, std::span<const double> q, metric_kind m);

/// d(p, q). Rejects dimension mismatches; the absolute metric requires d = 1.
double distance(const point& p, const point& q, metric_kind m);

/// Finite prefix of a sequence (x_n), n >= start_index, stored flat
/// (dim doubles per point) so the kernels can stream it.
struct trace {
    std::int64_t start_index = 1;
    std::size_t dimension = 1;
    std::vector<double> data; // size() * dimension coordinates

    trace() = default;
    trace(std::int64_t start, std::size_t dim, std::vector<double> flat);
    static trace from_points(std::int64_t start, const std::vector<point>& pts);

    std::size_t size() const { return dimension == 0 ? 0 : data.size() / dimension; }
    std::span<const double> at(std::size_t k) const {
        return std::span<const double>(data).subspan(k * dimension, dimension);
    }
    point point_at(std::size_t k) const;
    /// Sequence index of entry k, i.e. start_index + k.
    std::int64_t index_of(std::size_t k) const { return start_index + static_cast<std::int64_t>(k); }
};

/// The sequence d(x_n, x*) for a trace and a claimed limit. Entries are
/// finite and nonnegative; entry k belongs to index start_index + k.
struct error_trace {
    std::int64_t start_index = 1;
    std::vector<double> values;

    error_trace() = default;
    error_trace(std::int64_t start, std::vector<double> vals);

    std::size_t size() const { return values.size(); }
    std::int64_t index_of(std::size_t k) const { return start_index + static_cast<std::int64_t>(k); }
    std::int64_t last_index() const { return start_index + static_cast<std::int64_t>(values.size()) - 1; }
};

/// Pointwise ratio of two error traces over their index overlap, under the
/// xratio conventions.
struct ratio_trace {
    std::int64_t start_index = 1;
    std::vector<xreal> values;

    std::size_t size() const { return values.size(); }
};

/// values[k] = d(t[k], limit). Rejects dimension mismatches.
error_trace make_error_trace(const trace& t, const point& limit, metric_kind m);

/// Aligns e1 and e2 by sequence index, truncates to the overlap, and forms
/// the pointwise xratio. Empty overlap is rejected.
ratio_trace make_ratio_trace(const error_trace& e1, const error_trace& e2);

} // namespace ratecomp
