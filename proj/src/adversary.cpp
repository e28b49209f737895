#include "ratecomp/adversary.hpp"

#include <algorithm>
#include <cmath>

#include "ratecomp/kernels.hpp"

namespace ratecomp {

namespace {

void require_aligned(const error_trace& e_x, const error_trace& e_y, const char* what) {
    if (e_x.start_index != 1 || e_y.start_index != 1)
        throw input_error(std::string(what) + ": inputs must start at index 1 "
                          "(the 1/n term needs the true index); re-index first");
    if (e_x.size() != e_y.size() || e_x.size() == 0)
        throw input_error(std::string(what) + ": inputs must be nonempty and equal-length");
}

// Shift a pair with arbitrary start indices onto a shared range starting at 1.
std::pair<error_trace, error_trace> reindex_to_one(const error_trace& e_x,
                                                   const error_trace& e_y,
                                                   std::int64_t& offset) {
    const std::int64_t lo = std::max(e_x.start_index, e_y.start_index);
    const std::int64_t hi = std::min(e_x.last_index(), e_y.last_index());
    if (hi < lo) throw input_error("demonstrate_inconsistency: no index overlap");
    offset = lo - 1;
    const std::size_t n = static_cast<std::size_t>(hi - lo + 1);
    auto slice = [&](const error_trace& e) {
        const std::size_t off = static_cast<std::size_t>(lo - e.start_index);
        return error_trace(1, std::vector<double>(e.values.begin() + off,
                                                  e.values.begin() + off + n));
    };
    return {slice(e_x), slice(e_y)};
}

double tail_max_of(const error_trace& e, double window_frac) {
    const std::size_t len = e.size();
    std::size_t wlen = static_cast<std::size_t>(
        std::ceil(std::clamp(window_frac, 1e-9, 1.0) * static_cast<double>(len)));
    wlen = std::clamp<std::size_t>(wlen, 1, len);
    return kernels::max_value(std::span<const double>(e.values).subspan(len - wlen, wlen));
}

synthesis_report build_report(const error_trace& e_x, const error_trace& e_y,
                              bound_trace for_x, bound_trace for_y,
                              const compare_options& opts, std::int64_t offset) {
    synthesis_report r{.bounds_for_x = std::move(for_x), .bounds_for_y = std::move(for_y)};
    r.validity_x = validate_bounds(e_x, r.bounds_for_x, opts.estimator.zero_tol,
                                   opts.estimator.window_frac);
    r.validity_y = validate_bounds(e_y, r.bounds_for_y, opts.estimator.zero_tol,
                                   opts.estimator.window_frac);
    r.berinde_verdict =
        compare_berinde_def27(e_x, e_y, r.bounds_for_x, r.bounds_for_y, opts);
    std::vector<xreal> ratio(r.bounds_for_x.size());
    kernels::ratio_map(r.bounds_for_x.values, r.bounds_for_y.values, ratio);
    r.ratio_tail = estimate_tail(ratio, tail_kind::limsup, opts.estimator.window_frac,
                                 opts.estimator.limit_tol, r.bounds_for_x.start_index);
    r.reindex_offset = offset;
    r.input_x_vanishing = tail_max_of(e_x, opts.estimator.window_frac) <= opts.estimator.zero_tol;
    r.input_y_vanishing = tail_max_of(e_y, opts.estimator.window_frac) <= opts.estimator.zero_tol;
    return r;
}

} // namespace

std::pair<bound_trace, bound_trace> synthesize_prop1(const error_trace& e_x,
                                                     const error_trace& e_y) {
    require_aligned(e_x, e_y, "synthesize_prop1");
    const std::size_t n = e_x.size();
    std::vector<double> a(n), b(n);
    kernels::adversary_map(e_x.values, e_y.values, 1, a, b);
    return {bound_trace(1, std::move(a)), bound_trace(1, std::move(b))};
}

std::pair<bound_trace, bound_trace> synthesize_equal_bounds(const error_trace& e_x,
                                                            const error_trace& e_y) {
    require_aligned(e_x, e_y, "synthesize_equal_bounds");
    const std::size_t n = e_x.size();
    std::vector<double> a(n);
    for (std::size_t k = 0; k < n; ++k)
        a[k] = e_x.values[k] + e_y.values[k] + 1.0 / static_cast<double>(k + 1);
    std::vector<double> b = a;
    return {bound_trace(1, std::move(a)), bound_trace(1, std::move(b))};
}

std::pair<synthesis_report, synthesis_report>
demonstrate_inconsistency(const error_trace& e_x, const error_trace& e_y,
                          const compare_options& opts) {
    std::int64_t offset = 0;
    error_trace ex = e_x;
    error_trace ey = e_y;
    if (e_x.start_index != 1 || e_y.start_index != 1 || e_x.size() != e_y.size()) {
        auto [sx, sy] = reindex_to_one(e_x, e_y, offset);
        ex = std::move(sx);
        ey = std::move(sy);
    }

    auto [fa, fb] = synthesize_prop1(ex, ey);
    synthesis_report forward =
        build_report(ex, ey, std::move(fa), std::move(fb), opts, offset);
    forward.berinde_verdict.notes =
        "bounds synthesized for the forward direction (x over y); " +
        forward.berinde_verdict.notes;

    auto [ra, rb] = synthesize_prop1(ey, ex);
    // The reverse run bounds y by its a_n and x by its b_n; reported here
    // from the caller's (x, y) perspective.
    synthesis_report reverse =
        build_report(ex, ey, std::move(rb), std::move(ra), opts, offset);
    reverse.berinde_verdict.notes =
        "bounds synthesized for the reverse direction (y over x); " +
        reverse.berinde_verdict.notes;

    return {std::move(forward), std::move(reverse)};
}

} // namespace ratecomp
