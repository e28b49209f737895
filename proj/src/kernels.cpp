#include "ratecomp/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ratecomp::kernels {

namespace {

bool use_parallel(exec policy, std::size_t n) {
#ifdef _OPENMP
    switch (policy) {
        case exec::serial: return false;
        case exec::parallel: return true;
        case exec::automatic: return n >= parallel_grain;
    }
    return false;
#else
    (void)policy;
    (void)n;
    return false;
#endif
}

inline double dist_at(const double* flat, std::size_t dim, const double* limit,
                      metric_kind m, std::size_t k) {
    const double* p = flat + k * dim;
    switch (m) {
        case metric_kind::absolute:
            return std::fabs(p[0] - limit[0]);
        case metric_kind::chebyshev: {
            double best = 0.0;
            for (std::size_t i = 0; i < dim; ++i)
                best = std::max(best, std::fabs(p[i] - limit[i]));
            return best;
        }
        case metric_kind::euclidean: {
            if (dim == 1) return std::fabs(p[0] - limit[0]);
            double s = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
                const double d = p[i] - limit[i];
                s += d * d;
            }
            return std::sqrt(s);
        }
    }
    return 0.0;
}

inline xreal ratio_at(double num, double den) {
    // Same conventions as xratio, without the precondition re-checks:
    // the callers own validated error traces.
    if (den == 0.0)
        return num == 0.0 ? xreal(1.0) : xreal::infinity();
    return xreal(num / den);
}

inline void adversary_at(const double* ex, const double* ey, std::int64_t start,
                         std::size_t k, double* a, double* b) {
    const double inv_n = 1.0 / static_cast<double>(start + static_cast<std::int64_t>(k));
    const double an = ex[k] + ey[k] + inv_n;
    a[k] = an;
    b[k] = an <= 1.0 ? std::sqrt(an) : std::max(ey[k], inv_n);
}

} // namespace

bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

void error_map(std::span<const double> flat, std::size_t dim,
               std::span<const double> limit, metric_kind m,
               std::span<double> out, exec policy) {
    assert(dim >= 1 && limit.size() == dim && out.size() * dim == flat.size());
    const std::size_t n = out.size();
    if (use_parallel(policy, n)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(n); ++k)
            out[static_cast<std::size_t>(k)] =
                dist_at(flat.data(), dim, limit.data(), m, static_cast<std::size_t>(k));
#endif
    } else {
        for (std::size_t k = 0; k < n; ++k)
            out[k] = dist_at(flat.data(), dim, limit.data(), m, k);
    }
}

void ratio_map(std::span<const double> num, std::span<const double> den,
               std::span<xreal> out, exec policy) {
    assert(num.size() == den.size() && out.size() == num.size());
    const std::size_t n = out.size();
    if (use_parallel(policy, n)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(n); ++k)
            out[static_cast<std::size_t>(k)] =
                ratio_at(num[static_cast<std::size_t>(k)], den[static_cast<std::size_t>(k)]);
#endif
    } else {
        for (std::size_t k = 0; k < n; ++k)
            out[k] = ratio_at(num[k], den[k]);
    }
}

window_stats minmax(std::span<const xreal> v, exec policy) {
    window_stats r;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    std::size_t fin = 0;
    std::size_t inf = 0;
    const std::size_t n = v.size();
    if (use_parallel(policy, n)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(min : lo) reduction(max : hi) \
    reduction(+ : fin, inf)
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(n); ++k) {
            const xreal x = v[static_cast<std::size_t>(k)];
            if (x.is_infinite()) {
                ++inf;
            } else {
                ++fin;
                lo = std::min(lo, x.v);
                hi = std::max(hi, x.v);
            }
        }
#endif
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            const xreal x = v[k];
            if (x.is_infinite()) {
                ++inf;
            } else {
                ++fin;
                lo = std::min(lo, x.v);
                hi = std::max(hi, x.v);
            }
        }
    }
    r.finite_min = lo;
    r.finite_max = hi;
    r.finite_count = fin;
    r.infinite_count = inf;
    return r;
}

double max_value(std::span<const double> v, exec policy) {
    double hi = 0.0;
    const std::size_t n = v.size();
    if (use_parallel(policy, n)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(max : hi)
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(n); ++k)
            hi = std::max(hi, v[static_cast<std::size_t>(k)]);
#endif
    } else {
        for (std::size_t k = 0; k < n; ++k)
            hi = std::max(hi, v[k]);
    }
    return hi;
}

bound_scan_result bound_scan(std::span<const double> err, std::span<const double> bound,
                             exec policy) {
    assert(err.size() == bound.size());
    const std::size_t n = err.size();
    const std::size_t npos = n;
    std::size_t first = npos;
    if (use_parallel(policy, n)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(min : first)
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(n); ++k) {
            const std::size_t i = static_cast<std::size_t>(k);
            if (!(bound[i] > 0.0) || bound[i] < err[i])
                first = std::min(first, i);
        }
#endif
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            if (!(bound[i] > 0.0) || bound[i] < err[i]) {
                first = i;
                break;
            }
        }
    }
    bound_scan_result r;
    if (first == npos) return r;
    r.first_bad = first;
    r.defect = !(bound[first] > 0.0) ? bound_defect::positivity : bound_defect::domination;
    return r;
}

bool pointwise_le(std::span<const double> a, std::span<const double> b, exec policy) {
    assert(a.size() == b.size());
    const std::size_t n = a.size();
    bool ok = true;
    if (use_parallel(policy, n)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(&& : ok)
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(n); ++k)
            ok = ok && a[static_cast<std::size_t>(k)] <= b[static_cast<std::size_t>(k)];
#endif
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            if (!(a[k] <= b[k])) return false;
        }
    }
    return ok;
}

void adversary_map(std::span<const double> ex, std::span<const double> ey,
                   std::int64_t start, std::span<double> a, std::span<double> b,
                   exec policy) {
    assert(ex.size() == ey.size() && a.size() == ex.size() && b.size() == ex.size());
    const std::size_t n = ex.size();
    if (use_parallel(policy, n)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(n); ++k)
            adversary_at(ex.data(), ey.data(), start, static_cast<std::size_t>(k),
                         a.data(), b.data());
#endif
    } else {
        for (std::size_t k = 0; k < n; ++k)
            adversary_at(ex.data(), ey.data(), start, k, a.data(), b.data());
    }
}

} // namespace ratecomp::kernels
