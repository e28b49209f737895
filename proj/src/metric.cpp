#include "ratecomp/metric.hpp"

#include <algorithm>
#include <cmath>

#include "ratecomp/errors.hpp"
#include "ratecomp/kernels.hpp"

namespace ratecomp {

point::point(std::vector<double> c) : coords(std::move(c)) {
    if (coords.empty())
        throw input_error("point needs at least one coordinate");
    for (double v : coords)
        if (!std::isfinite(v))
            throw input_error("point coordinates must be finite");
}

point trace::point_at(std::size_t k) const {
    auto s = at(k);
    return point(std::vector<double>(s.begin(), s.end()));
}

std::string to_string(metric_kind m) {
    switch (m) {
        case metric_kind::euclidean: return "euclidean";
        case metric_kind::chebyshev: return "chebyshev";
        case metric_kind::absolute: return "absolute";
    }
    return "?";
}

metric_kind metric_from_string(const std::string& name) {
    if (name == "euclidean") return metric_kind::euclidean;
    if (name == "chebyshev") return metric_kind::chebyshev;
    if (name == "absolute") return metric_kind::absolute;
    throw input_error("unknown metric: " + name);
}

double distance(std::span<const double> p, std::span<const double> q, metric_kind m) {
    if (p.size() != q.size())
        throw input_error("distance: dimension mismatch");
    if (m == metric_kind::absolute && p.size() != 1)
        throw input_error("absolute metric is defined for dimension 1 only");
    switch (m) {
        case metric_kind::absolute:
            return std::fabs(p[0] - q[0]);
        case metric_kind::chebyshev: {
            double best = 0.0;
            for (std::size_t i = 0; i < p.size(); ++i)
                best = std::max(best, std::fabs(p[i] - q[i]));
            return best;
        }
        case metric_kind::euclidean: {
            if (p.size() == 1) return std::fabs(p[0] - q[0]);
            double s = 0.0;
            for (std::size_t i = 0; i < p.size(); ++i) {
                const double d = p[i] - q[i];
                s += d * d;
            }
            return std::sqrt(s);
        }
    }
    return 0.0;
}

double distance(const point& p, const point& q, metric_kind m) {
    return distance(std::span<const double>(p.coords), std::span<const double>(q.coords), m);
}

trace::trace(std::int64_t start, std::size_t dim, std::vector<double> flat)
    : start_index(start), dimension(dim), data(std::move(flat)) {
    if (start_index < 1)
        throw input_error("trace start_index must be >= 1");
    if (dimension < 1)
        throw input_error("trace dimension must be >= 1");
    if (data.empty() || data.size() % dimension != 0)
        throw input_error("trace data must hold a whole number of points (>= 1)");
    for (double v : data)
        if (!std::isfinite(v))
            throw input_error("trace coordinates must be finite");
}

trace trace::from_points(std::int64_t start, const std::vector<point>& pts) {
    if (pts.empty())
        throw input_error("trace needs at least one point");
    const std::size_t dim = pts.front().dim();
    std::vector<double> flat;
    flat.reserve(pts.size() * dim);
    for (const point& p : pts) {
        if (p.dim() != dim)
            throw input_error("all trace points must share one dimension");
        flat.insert(flat.end(), p.coords.begin(), p.coords.end());
    }
    return trace(start, dim, std::move(flat));
}

error_trace::error_trace(std::int64_t start, std::vector<double> vals)
    : start_index(start), values(std::move(vals)) {
    if (start_index < 1)
        throw input_error("error_trace start_index must be >= 1");
    for (double v : values)
        if (!std::isfinite(v) || v < 0.0)
            throw input_error("error_trace entries must be finite and >= 0");
}

error_trace make_error_trace(const trace& t, const point& limit, metric_kind m) {
    if (limit.dim() != t.dimension)
        throw input_error("error_trace: limit dimension does not match trace");
    if (m == metric_kind::absolute && t.dimension != 1)
        throw input_error("absolute metric is defined for dimension 1 only");
    std::vector<double> values(t.size());
    kernels::error_map(t.data, t.dimension, limit.coords, m, values);
    return error_trace(t.start_index, std::move(values));
}

ratio_trace make_ratio_trace(const error_trace& e1, const error_trace& e2) {
    const std::int64_t lo = std::max(e1.start_index, e2.start_index);
    const std::int64_t hi = std::min(e1.last_index(), e2.last_index());
    if (hi < lo)
        throw input_error("ratio_trace: error traces have no index overlap");
    const std::size_t n = static_cast<std::size_t>(hi - lo + 1);
    const std::size_t o1 = static_cast<std::size_t>(lo - e1.start_index);
    const std::size_t o2 = static_cast<std::size_t>(lo - e2.start_index);
    ratio_trace r;
    r.start_index = lo;
    r.values.resize(n);
    kernels::ratio_map(std::span<const double>(e1.values).subspan(o1, n),
                       std::span<const double>(e2.values).subspan(o2, n), r.values);
    return r;
}

} // namespace ratecomp
